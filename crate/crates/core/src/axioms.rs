//! Randomized law checking for idempotent systems.
//!
//! Every algebraic law the engine relies on is checked here against sampled
//! values. Failures are reported as data (with a witness), not panics, so a
//! report can list everything that went wrong in one run.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::index_set::IndexSet;
use crate::system::IdempotentSystem;

/// Outcome of one law over all samples.
#[derive(Clone, Debug)]
pub struct LawOutcome {
    pub law: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub laws: Vec<LawOutcome>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.failed == 0)
    }

    pub fn total_failed(&self) -> usize {
        self.laws.iter().map(|l| l.failed).sum()
    }

    fn record(&mut self, law: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        let entry = match self.laws.iter_mut().find(|l| l.law == law) {
            Some(e) => e,
            None => {
                self.laws.push(LawOutcome {
                    law,
                    passed: 0,
                    failed: 0,
                    witness: None,
                });
                self.laws.last_mut().unwrap()
            }
        };
        if ok {
            entry.passed += 1;
        } else {
            entry.failed += 1;
            if entry.witness.is_none() {
                entry.witness = Some(witness());
            }
        }
    }
}

impl std::fmt::Display for LawReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.laws {
            writeln!(f, "{:<38} pass={} fail={}", l.law, l.passed, l.failed)?;
            if let Some(w) = &l.witness {
                writeln!(f, "    witness: {w}")?;
            }
        }
        Ok(())
    }
}

fn random_subset(rng: &mut ChaCha8Rng, scope: &IndexSet) -> IndexSet {
    IndexSet::from_iter(scope.iter().filter(|_| rng.random_bool(0.5)))
}

/// Checks every law on the given sample triples.
///
/// `approximants` supplies candidate values on a requested scope; they feed
/// the two extremal characterizations (combination as least upper bound,
/// marginalization as best sub-scope approximation), which cannot be checked
/// from the triple alone.
pub fn check_axioms<S: IdempotentSystem>(
    sys: &S,
    samples: &[[S::Value; 3]],
    seed: u64,
    approximants: impl Fn(&IndexSet, &mut ChaCha8Rng) -> Vec<S::Value>,
) -> LawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LawReport::default();

    for [v1, v2, v3] in samples {
        let s1 = sys.scope(v1).clone();
        let s2 = sys.scope(v2).clone();

        // Commutativity and associativity of combination.
        let c12 = sys.combine(v1, v2);
        let c21 = sys.combine(v2, v1);
        report.record("combine commutative", sys.equivalent(&c12, &c21), || {
            format!("{v1:?} ⊗ {v2:?}")
        });
        let assoc_l = sys.combine(&c12, v3);
        let assoc_r = sys.combine(v1, &sys.combine(v2, v3));
        report.record("combine associative", sys.equivalent(&assoc_l, &assoc_r), || {
            format!("{v1:?}, {v2:?}, {v3:?}")
        });

        // Marginalization chains compose.
        let j = random_subset(&mut rng, &s1);
        let i = random_subset(&mut rng, &j);
        let chained = sys.marginalize(&sys.marginalize(v1, &j), &i);
        let direct = sys.marginalize(v1, &i);
        report.record("marginal chain", sys.equivalent(&chained, &direct), || {
            format!("{v1:?} via {j:?} to {i:?}")
        });

        // Marginalizing a combination only needs the shared part.
        let exch_l = sys.marginalize(&c12, &s1);
        let exch_r = sys.combine(v1, &sys.marginalize(v2, &s1.intersection(&s2)));
        report.record(
            "combine-marginal exchange",
            sys.equivalent(&exch_l, &exch_r),
            || format!("{v1:?} ⊗ {v2:?} to {s1:?}"),
        );

        // Neutral element and absorbing contradiction.
        let neutral = sys.neutral(&s1);
        report.record(
            "neutral identity",
            sys.equivalent(&sys.combine(&neutral, v1), v1),
            || format!("{v1:?}"),
        );
        let bottom = sys.contradiction(&s1);
        let absorbed = sys.combine(&bottom, v2);
        report.record(
            "contradiction absorbs",
            sys.is_contradiction(&absorbed)
                && sys.equivalent(&absorbed, &sys.contradiction(&s1.union(&s2))),
            || format!("{v2:?}"),
        );

        // Combining a value with any of its own marginals changes nothing.
        let i = random_subset(&mut rng, &s1);
        let marg = sys.marginalize(v1, &i);
        report.record(
            "idempotent absorption",
            sys.equivalent(&sys.combine(&marg, v1), v1),
            || format!("{v1:?} with {i:?}"),
        );
        report.record(
            "marginal identity",
            sys.equivalent(&sys.marginalize(v1, &s1), v1),
            || format!("{v1:?}"),
        );

        // The order survives marginalization: a marginal of v1 sits below
        // v1, and restricting both sides keeps them ordered.
        let i = random_subset(&mut rng, &s1);
        let k = random_subset(&mut rng, &i);
        let below = sys.marginalize(v1, &i);
        let ok_order = sys.leq(&below, v1)
            && sys.leq(&sys.marginalize(&below, &k), &sys.marginalize(v1, &k));
        report.record("order monotone under marginal", ok_order, || {
            format!("{v1:?} via {i:?}, {k:?}")
        });
        if sys.leq(v1, v2) && s1.is_subset(&s2) {
            let k = random_subset(&mut rng, &s1);
            report.record(
                "order monotone under marginal",
                sys.leq(&sys.marginalize(v1, &k), &sys.marginalize(v2, &k)),
                || format!("{v1:?} ⪯ {v2:?} at {k:?}"),
            );
        }

        // Combination is the least upper bound.
        let union = s1.union(&s2);
        let mut join_ok = sys.leq(v1, &c12) && sys.leq(v2, &c12);
        let mut join_witness = String::new();
        let mut bounds: Vec<S::Value> = vec![
            sys.combine(&c12, v3),
            sys.combine(v1, v3),
            sys.combine(v2, v3),
            sys.contradiction(&union),
        ];
        bounds.extend(approximants(&union, &mut rng));
        for u in &bounds {
            if sys.leq(v1, u) && sys.leq(v2, u) && !sys.leq(&c12, u) {
                join_ok = false;
                join_witness = format!("upper bound {u:?} not above {c12:?}");
                break;
            }
        }
        report.record("combine is join", join_ok, || join_witness.clone());

        // Marginalization is the strongest sub-scope consequence.
        let j = random_subset(&mut rng, &s1);
        let m = sys.marginalize(v1, &j);
        let mut best_ok = sys.leq(&m, v1);
        let mut best_witness = String::new();
        for cand in approximants(&j, &mut rng) {
            if sys.leq(&cand, v1) && !sys.leq(&cand, &m) {
                best_ok = false;
                best_witness = format!("{cand:?} below {v1:?} but not below {m:?}");
                break;
            }
        }
        report.record("marginal is best approximation", best_ok, || {
            best_witness.clone()
        });

        // Disjunction is the greatest lower bound of the extensions.
        let d12 = sys.disjoin(v1, v2);
        let mut meet_ok = sys.leq(&d12, v1) && sys.leq(&d12, v2);
        let mut meet_witness = String::new();
        let mut lower: Vec<S::Value> = vec![sys.neutral(&union), sys.disjoin(&d12, v3)];
        lower.extend(approximants(&union, &mut rng));
        for w in &lower {
            if sys.leq(w, v1) && sys.leq(w, v2) && !sys.leq(w, &d12) {
                meet_ok = false;
                meet_witness = format!("lower bound {w:?} not below {d12:?}");
                break;
            }
        }
        report.record("disjoin is meet", meet_ok, || meet_witness.clone());

        // Disjunction distributes over marginalization on shared scope.
        let k = random_subset(&mut rng, &s1.intersection(&s2));
        let dis_l = sys.marginalize(&d12, &k);
        let dis_r = sys.disjoin(&sys.marginalize(v1, &k), &sys.marginalize(v2, &k));
        report.record(
            "disjunction distributes over marginal",
            sys.equivalent(&dis_l, &dis_r),
            || format!("{v1:?} ⊕ {v2:?} at {k:?}"),
        );
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{ExplicitSet, FiniteSystem, FrameSpec};
    use crate::vars::VarId;

    fn scope(ids: &[u32]) -> IndexSet {
        IndexSet::from_iter(ids.iter().map(|i| VarId(*i)))
    }

    #[test]
    fn constant_triples_pass_trivially() {
        let sys = FiniteSystem::new(FrameSpec::new(vec![2, 2]));
        let v = ExplicitSet::new(scope(&[0, 1]), [vec![0, 0], vec![1, 1]]);
        let samples = vec![[v.clone(), v.clone(), v]];
        let report = check_axioms(&sys, &samples, 7, |_, _| Vec::new());
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn broken_system_is_caught() {
        // A wrapper whose disjunction forgets one operand.
        struct Broken(FiniteSystem);
        impl IdempotentSystem for Broken {
            type Value = ExplicitSet;
            fn scope<'a>(&self, v: &'a ExplicitSet) -> &'a IndexSet {
                self.0.scope(v)
            }
            fn combine(&self, a: &ExplicitSet, b: &ExplicitSet) -> ExplicitSet {
                self.0.combine(a, b)
            }
            fn marginalize(&self, v: &ExplicitSet, to: &IndexSet) -> ExplicitSet {
                self.0.marginalize(v, to)
            }
            fn neutral(&self, scope: &IndexSet) -> ExplicitSet {
                self.0.neutral(scope)
            }
            fn contradiction(&self, scope: &IndexSet) -> ExplicitSet {
                self.0.contradiction(scope)
            }
            fn is_contradiction(&self, v: &ExplicitSet) -> bool {
                self.0.is_contradiction(v)
            }
            fn equivalent(&self, a: &ExplicitSet, b: &ExplicitSet) -> bool {
                self.0.equivalent(a, b)
            }
            fn disjoin(&self, a: &ExplicitSet, _b: &ExplicitSet) -> ExplicitSet {
                a.clone()
            }
        }
        let sys = Broken(FiniteSystem::new(FrameSpec::new(vec![2])));
        let a = ExplicitSet::new(scope(&[0]), [vec![0]]);
        let b = ExplicitSet::new(scope(&[0]), [vec![1]]);
        let samples = vec![[a, b.clone(), b]];
        let report = check_axioms(&sys, &samples, 7, |_, _| Vec::new());
        assert!(!report.all_passed());
        let broken = report.laws.iter().find(|l| l.law == "disjoin is meet").unwrap();
        assert!(broken.failed > 0);
        assert!(broken.witness.is_some());
    }
}
