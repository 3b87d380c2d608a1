//! Brute-force singularity over a prime field: `(r, q)` is singular iff for
//! some `f >= 1` and `e`-restricted `λ ⊢ n-2f` the inflated module
//! `P(D^λ)` is strictly larger than its simple quotient `D^{f,λ}`, that is
//! `|D_{f,n}|·dim D^λ > rank G_{f,λ}`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cellmod::{gram_rank, CellError};
use crate::coeff::{is_prime, ConcreteSpec, Fp, ParamSpec};
use crate::combin::{cells, dfn_count, CellIndex};
use crate::hecke::specht_rank;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OracleRow {
    pub cell: CellIndex,
    pub dim_p: usize,
    pub dim_simple: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub p: u64,
    pub q0: u64,
    pub r0: u64,
    pub n: u32,
    pub singular: bool,
    pub table: Vec<OracleRow>,
    pub first_witness: Option<CellIndex>,
}

fn hecke_rank(cell: &CellIndex, spec: &ConcreteSpec) -> Result<usize, CellError> {
    if cell.lambda.is_empty() {
        return Ok(1);
    }
    Ok(specht_rank(&cell.lambda, spec)?)
}

pub fn singular_oracle(n: u32, spec: &ConcreteSpec) -> Result<OracleReport, CellError> {
    let e = Some(spec.e());
    let mut table = Vec::new();
    let mut first_witness = None;
    for cell in cells(n) {
        let dim_p = dfn_count(cell.f as usize, n as usize) as usize * hecke_rank(&cell, spec)?;
        let dim_simple = gram_rank(&cell, spec)?;
        if first_witness.is_none()
            && cell.f > 0
            && cell.lambda.is_e_restricted(e)
            && dim_p > dim_simple
        {
            first_witness = Some(cell.clone());
        }
        table.push(OracleRow {
            cell,
            dim_p,
            dim_simple,
        });
    }
    Ok(OracleReport {
        p: spec.p(),
        q0: spec.q0.value(),
        r0: spec.r0.value(),
        n,
        singular: first_witness.is_some(),
        table,
        first_witness,
    })
}

/// `dim Δ(f,λ) - rank G_{f,λ}` for every cell.
pub fn radical_dims(n: u32, spec: &ConcreteSpec) -> Result<BTreeMap<String, usize>, CellError> {
    let mut out = BTreeMap::new();
    for cell in cells(n) {
        let rank = gram_rank(&cell, spec)?;
        out.insert(cell.to_string(), cell.dim() as usize - rank);
    }
    Ok(out)
}

pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// The invariants a classification may depend on: `p`, `e`, the sign of
/// `q^e`, `r` as `±q^a` with `0 <= a < e` (if it is one) and `δ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Regime {
    pub p: u64,
    pub e: u32,
    pub q_e_sign: i8,
    pub r_power: Option<(i8, i32)>,
    pub delta: u64,
}

pub fn regime(spec: &ConcreteSpec) -> Regime {
    let e = spec.e();
    Regime {
        p: spec.p(),
        e,
        q_e_sign: if spec.q0.pow(e as u64).value() == 1 {
            1
        } else {
            -1
        },
        r_power: spec.r_as_power(),
        delta: crate::coeff::LaurentPoly::delta()
            .specialize(spec.q0, spec.r0)
            .unwrap()
            .value(),
    }
}

/// Every valid `(q0, r0)` over the given primes, optionally keeping one
/// representative per regime.
pub fn sweep_specs(primes: &[u64], dedup: bool) -> Vec<ConcreteSpec> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for &p in primes.iter().filter(|&&p| is_prime(p)) {
        for q0 in 1..p {
            for r0 in 1..p {
                let Ok(spec) = ConcreteSpec::new(p, q0, r0) else {
                    continue;
                };
                if !dedup || seen.insert(regime(&spec)) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u32,
    pub p: u64,
    pub q0: u64,
    pub r0: u64,
    pub e: u32,
    pub oracle: bool,
    pub theorem: Option<bool>,
    pub clause: String,
}

impl SweepRow {
    pub fn agrees(&self) -> bool {
        self.theorem == Some(self.oracle)
    }
}

/// Oracle against the closed-form classification at every spec, in input
/// order regardless of the thread count.
pub fn sweep(ns: &[u32], specs: &[ConcreteSpec]) -> Result<Vec<SweepRow>, CellError> {
    let jobs: Vec<(u32, ConcreteSpec)> = ns
        .iter()
        .flat_map(|&n| specs.iter().map(move |s| (n, *s)))
        .collect();
    jobs.par_iter()
        .map(|&(n, spec)| {
            let report = singular_oracle(n, &spec)?;
            let verdict = crate::classify::classify_bmw(n, &ParamSpec::Concrete(spec))
                .expect("concrete specs are decidable");
            Ok(SweepRow {
                n,
                p: spec.p(),
                q0: spec.q0.value(),
                r0: spec.r0.value(),
                e: spec.e(),
                oracle: report.singular,
                theorem: verdict.singular,
                clause: verdict.clause,
            })
        })
        .collect()
}

/// `r0 = q0^-1` in `GF(p)`.
pub fn q_inverse(p: u64, q0: u64) -> u64 {
    Fp::new(q0, p).inverse().unwrap().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let s = ConcreteSpec::new(5, 2, 3).unwrap();
        assert!(!singular_oracle(3, &s).unwrap().singular);
        let r = singular_oracle(2, &s).unwrap();
        assert!(r.singular);
        assert_eq!(r.first_witness.unwrap().to_string(), "(1, ())");
        // e = 2 at q0 = 2 in GF(5), r0 = q0
        let s = ConcreteSpec::new(5, 2, 2).unwrap();
        assert_eq!(s.e(), 2);
        assert!(singular_oracle(4, &s).unwrap().singular);
    }

    #[test]
    fn report_invariants() {
        for spec in sweep_specs(&[5, 7], true) {
            for n in 2..=4 {
                let r = singular_oracle(n, &spec).unwrap();
                for row in &r.table {
                    assert!(row.dim_simple <= row.dim_p, "{row:?}");
                    if row.cell.f == 0 {
                        assert_eq!(row.dim_simple, row.dim_p);
                    }
                }
            }
        }
    }

    #[test]
    fn radicals() {
        // e = 6 and r = q^2 is not forbidden at n = 3
        let s = ConcreteSpec::new(13, 2, 4).unwrap();
        assert!(radical_dims(3, &s).unwrap().values().all(|&d| d == 0));
        let s = ConcreteSpec::new(5, 2, q_inverse(5, 2)).unwrap();
        let r = radical_dims(2, &s).unwrap();
        assert_eq!(r["(1, ())"], 1);
        assert_eq!(r["(0, (1,1))"], 0);
    }

    #[test]
    fn sweep_agreement_small() {
        let specs = sweep_specs(&DEFAULT_PRIMES, true);
        let rows = sweep(&[2, 3], &specs).unwrap();
        let bad: Vec<_> = rows.iter().filter(|r| !r.agrees()).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
