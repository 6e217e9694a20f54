//! Pass/fail records shared by every identity checker.

use rayon::prelude::*;

use crate::cdmod::ModElement;

/// One violated identity on one basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub identity: String,
    pub tuple: Vec<usize>,
    /// LHS − RHS, nonzero.
    pub difference: ModElement,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.failures.extend(other.failures);
    }

    pub fn fail(identity: &str, tuple: Vec<usize>, difference: ModElement) -> Self {
        CheckReport {
            failures: vec![Failure {
                identity: identity.to_string(),
                tuple,
                difference,
            }],
        }
    }

    /// Names of the violated identities, deduplicated in first-seen order.
    pub fn failed_identities(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for f in &self.failures {
            if !out.contains(&f.identity) {
                out.push(f.identity.clone());
            }
        }
        out
    }
}

/// All tuples in the product of `0..r` over `ranks`, first slot slowest.
pub fn basis_tuples(ranks: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &r in ranks {
        let mut next = Vec::with_capacity(out.len() * r);
        for t in &out {
            for j in 0..r {
                let mut u = t.clone();
                u.push(j);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Evaluate `diff` on every basis tuple (in parallel) and collect the nonzero
/// results in tuple order.
pub fn check_identity<F>(identity: &str, ranks: &[usize], diff: F) -> CheckReport
where
    F: Fn(&[usize]) -> ModElement + Sync,
{
    let tuples = basis_tuples(ranks);
    let failures: Vec<Failure> = tuples
        .par_iter()
        .filter_map(|t| {
            let d = diff(t);
            (!d.is_zero()).then(|| Failure {
                identity: identity.to_string(),
                tuple: t.clone(),
                difference: d,
            })
        })
        .collect();
    CheckReport { failures }
}
