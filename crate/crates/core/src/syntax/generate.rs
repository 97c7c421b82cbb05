//! Random and exhaustive formula generation for tests and benchmarks.

use std::collections::HashSet;

use rand::Rng;

use super::Formula;

/// Parameters for random formulas.
#[derive(Debug, Clone)]
pub struct FormulaGen {
    pub vars: Vec<String>,
    pub max_depth: usize,
    /// Probability that an inner position stops early with an atom.
    pub leaf_bias: f64,
    /// Allow `⊥`/`⊤` leaves.
    pub constants: bool,
}

impl FormulaGen {
    pub fn new(vars: &[&str], max_depth: usize) -> Self {
        FormulaGen {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            max_depth,
            leaf_bias: 0.2,
            constants: false,
        }
    }

    pub fn with_constants(mut self, yes: bool) -> Self {
        self.constants = yes;
        self
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        self.sample_depth(rng, self.max_depth)
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        if self.constants && rng.gen_bool(0.1) {
            return if rng.gen_bool(0.5) {
                Formula::Top
            } else {
                Formula::Bottom
            };
        }
        Formula::var(&self.vars[rng.gen_range(0..self.vars.len())])
    }

    fn sample_depth<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(self.leaf_bias) {
            return self.leaf(rng);
        }
        match rng.gen_range(0..4) {
            0 => Formula::neg(self.sample_depth(rng, depth - 1)),
            1 => Formula::nabla(self.sample_depth(rng, depth - 1)),
            2 => Formula::and(
                self.sample_depth(rng, depth - 1),
                self.sample_depth(rng, depth - 1),
            ),
            _ => Formula::or(
                self.sample_depth(rng, depth - 1),
                self.sample_depth(rng, depth - 1),
            ),
        }
    }
}

/// A random formula over `vars` of depth at most `max_depth`.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, vars: &[&str], max_depth: usize) -> Formula {
    FormulaGen::new(vars, max_depth).sample(rng)
}

/// Every formula over `vars` of depth at most `depth`, each exactly once,
/// shallower formulas first.
pub fn formulas_up_to_depth(vars: &[&str], depth: usize, constants: bool) -> Vec<Formula> {
    let mut all: Vec<Formula> = vars.iter().map(|v| Formula::var(v)).collect();
    if constants {
        all.push(Formula::Bottom);
        all.push(Formula::Top);
    }
    let mut seen: HashSet<Formula> = all.iter().cloned().collect();
    let mut frontier_start = 0;
    for _ in 0..depth {
        let frontier_end = all.len();
        let mut next = Vec::new();
        let fresh = frontier_start..frontier_end;
        for i in fresh.clone() {
            next.push(Formula::neg(all[i].clone()));
            next.push(Formula::nabla(all[i].clone()));
        }
        for i in 0..frontier_end {
            for j in 0..frontier_end {
                if !fresh.contains(&i) && !fresh.contains(&j) {
                    continue;
                }
                next.push(Formula::and(all[i].clone(), all[j].clone()));
                next.push(Formula::or(all[i].clone(), all[j].clone()));
            }
        }
        for f in next {
            if seen.insert(f.clone()) {
                all.push(f);
            }
        }
        frontier_start = frontier_end;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn enumeration_counts() {
        // depth 0: p; depth 1: ~p, #p, p&p, p|p.
        assert_eq!(formulas_up_to_depth(&["p"], 0, false).len(), 1);
        assert_eq!(formulas_up_to_depth(&["p"], 1, false).len(), 5);
        // depth 2 adds 2*4 unary and 2*(25-1) binary nodes.
        assert_eq!(formulas_up_to_depth(&["p"], 2, false).len(), 5 + 8 + 48);
        let all = formulas_up_to_depth(&["p", "q"], 2, true);
        assert!(all.iter().all(|f| f.depth() <= 2));
        let unique: HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
    }

    #[test]
    fn random_formulas_respect_bounds() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let gen = FormulaGen::new(&["p", "q"], 4).with_constants(true);
        for _ in 0..200 {
            let f = gen.sample(&mut rng);
            assert!(f.depth() <= 4);
            assert!(f.vars().iter().all(|v| &**v == "p" || &**v == "q"));
        }
    }
}
