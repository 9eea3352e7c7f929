//! Reduction of a user-optimizable cost function to a user-friendly one.
//!
//! Two tables are derived from `f` on spans `1..=horizon`:
//!
//! * the monotone envelope `f_inc(t) = min_{j >= t} f(j)`, and
//! * its sub-additive closure `f_tilde(t)`, the cheapest way to write `t` as a
//!   sum of positive pieces priced by `f_inc`.
//!
//! A travel planned under `f_tilde` is turned back into a travel whose raw
//! cost under `f` is the same, by splitting each backward jump into its
//! optimal pieces and realizing each piece `d` as "wait forward, then jump
//! back `d_m`", where `d_m >= d` attains `f_inc(d)`.

use thiserror::Error;

use crate::cost::{Cost, CostError, CostFunction, TableTail};
use crate::travel::{Step, Travel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("cost function is not user optimizable")]
    NotUserOptimizable,
    #[error("jump of {span} instants exceeds the closure horizon {horizon}")]
    BeyondHorizon { span: u64, horizon: u64 },
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// `f_inc[t] = min_{j >= t} f(j)` for `t` in `0..=horizon` (`f_inc[0] = 0`).
pub fn monotone_envelope(f: &CostFunction, horizon: u64) -> Result<Vec<Cost>, ClosureError> {
    if !f.is_user_optimizable() {
        return Err(ClosureError::NotUserOptimizable);
    }
    // Past `settles_after` the function is non-decreasing, so the suffix
    // minimum beyond `horizon` is found among the first settled spans.
    let reach = horizon.max(f.settles_after()) + 1;
    let mut suffix_min = f.eval(reach as i64)?;
    for j in (horizon + 1..reach).rev() {
        suffix_min = suffix_min.min(f.eval(j as i64)?);
    }
    let mut env = vec![Cost::ZERO; horizon as usize + 1];
    for t in (1..=horizon).rev() {
        suffix_min = suffix_min.min(f.eval(t as i64)?);
        env[t as usize] = suffix_min;
    }
    Ok(env)
}

/// Coin-change DP over the envelope: `closure[t] = min_a (env[a] + closure[t - a])`.
/// `split[t]` is the smallest minimizing first piece.
pub fn subadditive_closure(envelope: &[Cost]) -> (Vec<Cost>, Vec<usize>) {
    let h = envelope.len() - 1;
    let mut closure = vec![Cost::ZERO; h + 1];
    let mut split = vec![0; h + 1];
    for t in 1..=h {
        let (best, a) = (1..=t)
            .map(|a| (envelope[a] + closure[t - a], a))
            .min()
            .expect("t >= 1");
        closure[t] = best;
        split[t] = a;
    }
    (closure, split)
}

/// Smallest `d_m >= d` with `f(d_m) = f_inc(d)`.
pub fn dm_lookup(f: &CostFunction, d: u64) -> Result<u64, ClosureError> {
    let target = *monotone_envelope(f, d)?.last().unwrap();
    let reach = d.max(f.settles_after()) + 1;
    for j in d..=reach {
        if f.eval(j as i64)? == target {
            return Ok(j);
        }
    }
    unreachable!("the envelope value is attained within the settled range")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureTables {
    horizon: u64,
    envelope: Vec<Cost>,
    closure: Vec<Cost>,
    split: Vec<usize>,
    witness: Vec<u64>,
}

impl ClosureTables {
    pub fn build(f: &CostFunction, horizon: u64) -> Result<Self, ClosureError> {
        let horizon = horizon.max(1);
        let envelope = monotone_envelope(f, horizon)?;
        let (closure, split) = subadditive_closure(&envelope);
        let mut witness = vec![0; horizon as usize + 1];
        for d in 1..=horizon {
            witness[d as usize] = dm_lookup(f, d)?;
        }
        Ok(ClosureTables {
            horizon,
            envelope,
            closure,
            split,
            witness,
        })
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn envelope(&self) -> &[Cost] {
        &self.envelope
    }

    pub fn closure(&self) -> &[Cost] {
        &self.closure
    }

    pub fn split(&self) -> &[usize] {
        &self.split
    }

    /// `d_m` for every span `d` in `1..=horizon`.
    pub fn witness(&self) -> &[u64] {
        &self.witness
    }

    /// The closure as a cost function; it holds its last value past the
    /// horizon, which keeps it non-decreasing and sub-additive.
    pub fn closure_function(&self) -> CostFunction {
        CostFunction::table(self.closure[1..].to_vec(), Some(TableTail::HoldLast))
    }

    /// Pieces of an optimal decomposition of `span`, in order.
    pub fn pieces(&self, span: u64) -> Result<Vec<u64>, ClosureError> {
        if span > self.horizon {
            return Err(ClosureError::BeyondHorizon {
                span,
                horizon: self.horizon,
            });
        }
        let mut pieces = Vec::new();
        let mut rest = span as usize;
        while rest > 0 {
            let a = self.split[rest];
            pieces.push(a as u64);
            rest -= a;
        }
        Ok(pieces)
    }

    /// Rewrites every backward jump of `travel` so that its raw cost under `f`
    /// equals its cost under the closure. Jumps that `f` already prices at the
    /// closure value are kept as they are.
    pub fn expand_travel(&self, travel: &Travel, f: &CostFunction) -> Result<Travel, ClosureError> {
        let mut steps = vec![travel.first()];
        for w in travel.steps().windows(2) {
            let (from, to) = (w[0], w[1]);
            if from.node != to.node || to.time >= from.time {
                steps.push(to);
                continue;
            }
            let span = (from.time - to.time) as u64;
            if span > self.horizon {
                return Err(ClosureError::BeyondHorizon {
                    span,
                    horizon: self.horizon,
                });
            }
            if f.eval(span as i64)? == self.closure[span as usize] {
                steps.push(to);
                continue;
            }
            let node = from.node;
            let mut at = from.time as u64;
            for d in self.pieces(span)? {
                let dm = self.witness[d as usize];
                let landing = at - d;
                let peak = landing + dm;
                if peak != at {
                    steps.push(Step::new(node, peak as u32));
                }
                steps.push(Step::new(node, landing as u32));
                at = landing;
            }
        }
        Ok(Travel::new(steps).expect("non-empty"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u64) -> Cost {
        Cost::from_int(v)
    }

    fn five_one() -> CostFunction {
        CostFunction::parse("table:5,1;tail=const:1").unwrap()
    }

    /// Exhaustive minimum over all compositions of `t` into positive parts.
    fn compositions_min(env: &[Cost], t: usize) -> Cost {
        if t == 0 {
            return Cost::ZERO;
        }
        (1..=t)
            .map(|a| env[a] + compositions_min(env, t - a))
            .min()
            .unwrap()
    }

    #[test]
    fn envelope_examples() {
        let id = monotone_envelope(&CostFunction::Identity, 6).unwrap();
        assert_eq!(id, (0..=6).map(c).collect::<Vec<_>>());
        let env = monotone_envelope(&five_one(), 5).unwrap();
        assert_eq!(env[1..], [c(1); 5]);
        let k = monotone_envelope(&CostFunction::Constant(c(3)), 4).unwrap();
        assert_eq!(k[1..], [c(3); 4]);
        // A dip beyond the horizon still counts.
        let dip = CostFunction::parse("table:4,4,4,0;tail=const:9").unwrap();
        assert_eq!(monotone_envelope(&dip, 2).unwrap()[1..], [c(0), c(0)]);
    }

    #[test]
    fn closure_examples() {
        let env = monotone_envelope(&CostFunction::Identity, 6).unwrap();
        let (cl, split) = subadditive_closure(&env);
        assert_eq!(cl, env);
        assert!(split[1..].iter().all(|&a| a == 1));

        let env = monotone_envelope(&five_one(), 6).unwrap();
        let (cl, _) = subadditive_closure(&env);
        assert_eq!(cl[1..], [c(1); 6]);
        for t in 0..=6 {
            assert_eq!(cl[t], compositions_min(&env, t));
        }
    }

    #[test]
    fn closure_matches_composition_oracle_on_irregular_table() {
        let f = CostFunction::parse("table:3,7,4,9,2,8;tail=const:6").unwrap();
        let env = monotone_envelope(&f, 9).unwrap();
        let (cl, _) = subadditive_closure(&env);
        for t in 0..=9 {
            assert_eq!(cl[t], compositions_min(&env, t), "t={t}");
        }
    }

    #[test]
    fn dm_examples() {
        assert_eq!(dm_lookup(&CostFunction::Identity, 3).unwrap(), 3);
        assert_eq!(dm_lookup(&five_one(), 1).unwrap(), 2);
        assert_eq!(dm_lookup(&CostFunction::Constant(c(2)), 4).unwrap(), 4);
    }

    #[test]
    fn expansion_examples() {
        let tables = ClosureTables::build(&five_one(), 6).unwrap();
        let jump = Travel::from_pairs(&[(0, 3), (0, 2)]).unwrap();
        let expanded = tables.expand_travel(&jump, &five_one()).unwrap();
        assert_eq!(
            expanded,
            Travel::from_pairs(&[(0, 3), (0, 4), (0, 2)]).unwrap()
        );
        assert_eq!(expanded.cost(&five_one()).unwrap(), c(1));

        let id_tables = ClosureTables::build(&CostFunction::Identity, 6).unwrap();
        let tr = Travel::from_pairs(&[(0, 0), (0, 5), (1, 5), (1, 0)]).unwrap();
        assert_eq!(
            id_tables
                .expand_travel(&tr, &CostFunction::Identity)
                .unwrap(),
            tr
        );

        let long = Travel::from_pairs(&[(0, 9), (0, 0)]).unwrap();
        assert!(matches!(
            tables.expand_travel(&long, &five_one()),
            Err(ClosureError::BeyondHorizon {
                span: 9,
                horizon: 6
            })
        ));
    }

    #[test]
    fn uf_functions_are_fixed_points() {
        for f in [CostFunction::Identity, CostFunction::Constant(c(2))] {
            let tables = ClosureTables::build(&f, 8).unwrap();
            for d in 1..=8 {
                assert_eq!(tables.closure()[d], f.eval(d as i64).unwrap());
            }
        }
    }

    #[test]
    fn closure_function_is_user_friendly() {
        let tables = ClosureTables::build(&five_one(), 6).unwrap();
        assert!(tables.closure_function().is_user_friendly(12));
    }

    #[test]
    fn missing_tail_is_rejected() {
        let f = CostFunction::parse("table:5,1").unwrap();
        assert_eq!(
            ClosureTables::build(&f, 3),
            Err(ClosureError::NotUserOptimizable)
        );
    }
}
