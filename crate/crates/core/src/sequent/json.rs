use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ProofTree, Rule, Sequent, SequentError};
use crate::syntax::Formula;

/// One node of the JSON proof format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofRecord {
    pub rule: String,
    pub sequent: Sequent,
    #[serde(default)]
    pub principal: Option<Formula>,
    #[serde(default, rename = "macro")]
    pub macro_name: Option<String>,
    #[serde(default)]
    pub args: Vec<Formula>,
    #[serde(default)]
    pub premises: Vec<ProofRecord>,
}

impl From<&ProofTree> for ProofRecord {
    fn from(t: &ProofTree) -> Self {
        let (macro_name, args) = match &t.rule {
            Rule::Macro { name, args } => (Some(name.clone()), args.clone()),
            _ => (None, vec![]),
        };
        ProofRecord {
            rule: t.rule.name().to_string(),
            sequent: t.conclusion.clone(),
            principal: t.rule.principal().cloned(),
            macro_name,
            args,
            premises: t.premises.iter().map(ProofRecord::from).collect(),
        }
    }
}

impl TryFrom<ProofRecord> for ProofTree {
    type Error = SequentError;

    fn try_from(r: ProofRecord) -> Result<Self, Self::Error> {
        let rule = Rule::from_parts(&r.rule, r.principal, r.macro_name, r.args).map_err(SequentError::Record)?;
        let premises = r
            .premises
            .into_iter()
            .map(ProofTree::try_from)
            .collect::<Result<_, _>>()?;
        Ok(ProofTree::new(r.sequent, rule, premises))
    }
}

impl Serialize for ProofTree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ProofRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProofTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ProofRecord::deserialize(d)?;
        ProofTree::try_from(r).map_err(serde::de::Error::custom)
    }
}

pub fn proof_to_json(t: &ProofTree) -> String {
    serde_json::to_string_pretty(t).expect("proof records always serialise")
}

/// Parses a proof; nesting depth is not limited.
pub fn proof_from_json(text: &str) -> Result<ProofTree, SequentError> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let record = ProofRecord::deserialize(&mut de).map_err(|e| SequentError::Record(e.to_string()))?;
    de.end().map_err(|e| SequentError::Record(e.to_string()))?;
    ProofTree::try_from(record)
}

#[cfg(test)]
mod tests {
    use super::super::build::*;
    use super::*;

    #[test]
    fn round_trip_and_format() {
        let p = Formula::var("p");
        let t = neg(nabla_left(bottom(), &Formula::Bottom));
        let text = proof_to_json(&t);
        assert_eq!(proof_from_json(&text).unwrap(), t);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["rule"], "neg");
        assert_eq!(v["sequent"], "=> ~#bot");
        assert_eq!(v["premises"][0]["principal"], "#bot");
        let m = macro_node("block-axiom", vec![p.clone()], Sequent::parse("~#~p => p").unwrap(), vec![]);
        let back = proof_from_json(&proof_to_json(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn bad_records() {
        assert!(proof_from_json(r#"{"rule": "cut", "sequent": "p => p"}"#).is_err());
        assert!(proof_from_json(r#"{"rule": "jump", "sequent": "p => p"}"#).is_err());
        assert!(proof_from_json(r#"{"rule": "axiom", "sequent": "p => => p"}"#).is_err());
        let t = proof_from_json(r#"{"rule": "axiom", "sequent": "p => p"}"#).unwrap();
        assert_eq!(t.rule, Rule::Axiom);
    }
}
