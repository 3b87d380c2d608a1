//! Closed-form singularity classification for `B_n` and for the Brauer
//! algebra, plus the Gram non-vanishing criterion and simple-module labels.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{CoeffError, Fp, LaurentPoly, ParamSpec, RForm, SignTarget, Tri};
use crate::combin::{
    cells, forbidden_r_values, is_admissible, nu_ep, partitions, CellIndex, CombinError, Partition,
};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("the parameter spec does not decide {0}")]
    Undecidable(String),
    #[error("outside the regime of this construction: {0}")]
    OutOfRegime(String),
    #[error(transparent)]
    Combin(#[from] CombinError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A pair of cells `(ℓ, μ) < (f, λ)` with `μ` `(f - ℓ, λ)`-admissible.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WitnessPair {
    pub lower: CellIndex,
    pub upper: CellIndex,
}

impl fmt::Display for WitnessPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} < {}", self.lower, self.upper)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Cell(CellIndex),
    Pair(WitnessPair),
}

/// Outcome of a classification. `singular` is `None` when the spec leaves the
/// answer open.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub singular: Option<bool>,
    pub clause: String,
    pub witness: Option<Witness>,
    pub notes: String,
}

impl Verdict {
    fn new(singular: Tri, clause: &str, notes: impl Into<String>) -> Self {
        Verdict {
            singular: singular.known(),
            clause: clause.into(),
            witness: None,
            notes: notes.into(),
        }
    }
}

/// `∪_{k=3}^n {q^{3-2k}, ±q^{3-k}, -q^{2k-3}, ±q^{k-3}}` as `(sign, exponent)`.
pub fn set_s(n: u32) -> BTreeSet<(i8, i32)> {
    let mut out = BTreeSet::new();
    for k in 3..=n as i32 {
        out.insert((1, 3 - 2 * k));
        out.insert((1, 3 - k));
        out.insert((-1, 3 - k));
        out.insert((-1, 2 * k - 3));
        out.insert((1, k - 3));
        out.insert((-1, k - 3));
    }
    out
}

/// `{1..n-2} ∪ {-2, -4, .., 4-2n} ∪ {-1, -2, .., 4-n}`; the last range is
/// empty when `4 - n > -1`.
pub fn set_z(n: u32) -> BTreeSet<i64> {
    let n = n as i64;
    let mut out: BTreeSet<i64> = (1..=n - 2).collect();
    out.extend((2..=2 * n - 4).step_by(2).map(|k| -k));
    out.extend((1..=n - 4).map(|k| -k));
    out
}

fn any_tri(it: impl IntoIterator<Item = Tri>) -> Tri {
    it.into_iter().fold(Tri::False, Tri::or)
}

fn r_in_s(n: u32, spec: &ParamSpec) -> Tri {
    any_tri(set_s(n).into_iter().map(|(s, a)| spec.r_equals(s, a)))
}

/// Is `(r, q)` singular for `B_n`?
pub fn classify_bmw(n: u32, spec: &ParamSpec) -> Result<Verdict, ClassifyError> {
    if n < 2 {
        return Err(ClassifyError::OutOfRegime(format!("n = {n} < 2")));
    }
    let small_e = spec.e().is_some_and(|e| e + 2 <= n);
    if small_e {
        let s = spec.r_is_signed_q_power();
        let mut v = Verdict::new(s, "main.2", "e <= n-2: singular iff r = ±q^a");
        if s == Tri::True {
            match b3_witness(n, spec) {
                Ok(w) => {
                    v.notes = format!("{}; witness from {}", v.notes, w.case);
                    v.witness = Some(Witness::Pair(w.pair));
                }
                Err(e) => v.notes = format!("{}; {e}", v.notes),
            }
        }
        return Ok(v);
    }
    let special = spec.r_is_special();
    match special {
        Tri::Unknown => Ok(Verdict::new(
            Tri::Unknown,
            "main.1",
            "cannot decide whether r is q^-1 or -q",
        )),
        Tri::True => {
            let cond = |m: i64| spec.eval_sign_condition(m, SignTarget::MinusOne);
            if n % 2 == 0 || n >= 7 {
                Ok(Verdict::new(
                    Tri::True,
                    "main.1.2.a",
                    "r in {q^-1, -q}, n even or n >= 7",
                ))
            } else if n == 3 {
                Ok(Verdict::new(
                    cond(4),
                    "main.1.2.b",
                    "r in {q^-1, -q}: singular iff q^4 + 1 = 0",
                ))
            } else {
                let two = Tri::from_bool(spec.p() == Some(2));
                let s = any_tri([two, cond(4), cond(6), cond(8)]);
                Ok(Verdict::new(
                    s,
                    "main.1.2.c",
                    "r in {q^-1, -q}: singular iff 2(q^4+1)(q^6+1)(q^8+1) = 0",
                ))
            }
        }
        Tri::False => {
            let s = r_in_s(n, spec);
            let mut v = Verdict::new(
                s,
                "main.1.1",
                "e > n-2, r not in {q^-1, -q}: singular iff r in S",
            );
            if s == Tri::True {
                v.witness = forbidden_cell(n, spec).map(Witness::Cell);
            }
            Ok(v)
        }
    }
}

/// A cell with `f >= 1` whose Gram determinant vanishes through the first
/// condition of the criterion.
fn forbidden_cell(n: u32, spec: &ParamSpec) -> Option<CellIndex> {
    cells(n).into_iter().filter(|c| c.f > 0).find(|c| {
        forbidden_r_values(c.f, &c.lambda, n)
            .into_iter()
            .any(|(s, a)| spec.r_equals(s, a) == Tri::True)
    })
}

/// `δ` as a Laurent polynomial (symbolic spec) or a field element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DeltaValue {
    Symbolic(LaurentPoly),
    Field(Fp),
}

impl fmt::Display for DeltaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaValue::Symbolic(x) => write!(f, "{x}"),
            DeltaValue::Field(x) => write!(f, "{x}"),
        }
    }
}

/// `δ = (q+r)(qr-1) / (r(q+1)(q-1))`.
pub fn delta_of(spec: &ParamSpec) -> Result<DeltaValue, ClassifyError> {
    let d = LaurentPoly::delta();
    match spec {
        ParamSpec::Concrete(c) => Ok(DeltaValue::Field(d.specialize(c.q0, c.r0)?)),
        ParamSpec::Symbolic(s) => Ok(DeltaValue::Symbolic(match s.r {
            RForm::Generic => d,
            RForm::Power { sign, exp } => d.substitute_r(sign as i32, exp),
        })),
    }
}

/// The Brauer parameter: an integer multiple `a·1` of the identity, or an
/// element that is no such multiple.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BrauerDelta {
    Integer(i64),
    NonInteger,
}

/// Is `δ` singular for the Brauer algebra `B_n(δ)` in
/// characteristic `p` (`None` for zero)?
pub fn classify_brauer(
    n: u32,
    delta: BrauerDelta,
    p: Option<u64>,
) -> Result<Verdict, ClassifyError> {
    if n < 3 {
        return Err(ClassifyError::OutOfRegime(format!("n = {n} < 3")));
    }
    let reduce = |a: i64| match p {
        Some(p) => a.rem_euclid(p as i64),
        None => a,
    };
    let big_p = p.is_none_or(|p| p + 2 > n as u64);
    if !big_p {
        let s = matches!(delta, BrauerDelta::Integer(_));
        return Ok(Verdict::new(
            Tri::from_bool(s),
            "main1.2",
            "p <= n-2: singular iff δ = a·1",
        ));
    }
    let zero = matches!(delta, BrauerDelta::Integer(a) if reduce(a) == 0);
    if !zero {
        let s = match delta {
            BrauerDelta::Integer(a) => set_z(n).into_iter().any(|z| reduce(z) == reduce(a)),
            BrauerDelta::NonInteger => false,
        };
        return Ok(Verdict::new(
            Tri::from_bool(s),
            "main1.1.a",
            "p > n-2, δ ≠ 0: singular iff δ ∈ Z-set",
        ));
    }
    if n % 2 == 0 || n > 7 {
        Ok(Verdict::new(
            Tri::True,
            "main1.1.b.1",
            "δ = 0, n even or n > 7",
        ))
    } else if n == 3 {
        Ok(Verdict::new(
            Tri::from_bool(p == Some(2)),
            "main1.1.b.2",
            "δ = 0, n = 3: singular iff p = 2",
        ))
    } else {
        Ok(Verdict::new(
            Tri::False,
            "main1.1.b",
            format!("δ = 0 with odd n = {n} is not covered by the listed conditions"),
        ))
    }
}

/// The three conditions under which `det G_{f,λ} ≠ 0`.
pub fn nonzero_gram_criterion(cell: &CellIndex, spec: &ParamSpec) -> Result<bool, ClassifyError> {
    let forbidden = any_tri(
        forbidden_r_values(cell.f, &cell.lambda, cell.n)
            .into_iter()
            .map(|(s, a)| spec.r_equals(s, a)),
    );
    let Some(forbidden) = forbidden.known() else {
        return Err(ClassifyError::Undecidable(format!(
            "the r-condition for {cell}"
        )));
    };
    Ok(!forbidden && hecke_simple(&cell.lambda, spec))
}

/// `λ` is `e`-restricted and `ν_{e,p}` of the hook lengths is constant along
/// every row: together, `S^λ = D^λ ≠ 0`.
fn hecke_simple(lambda: &Partition, spec: &ParamSpec) -> bool {
    let e = spec.e();
    if !lambda.is_e_restricted(e) {
        return false;
    }
    let hooks = lambda.hook_lengths();
    (0..lambda.len() as u32).all(|row| {
        let nus: BTreeSet<i32> = hooks
            .iter()
            .filter(|((i, _), _)| *i == row)
            .map(|(_, h)| nu_ep(*h, e, spec.p()))
            .collect();
        nus.len() <= 1
    })
}

/// Labels of the simple `B_n`-modules.
pub fn simple_labels(n: u32, spec: &ParamSpec) -> Result<Vec<CellIndex>, ClassifyError> {
    let special = spec
        .r_is_special()
        .known()
        .ok_or_else(|| ClassifyError::Undecidable("whether r is q^-1 or -q".into()))?;
    let e = spec.e();
    Ok(cells(n)
        .into_iter()
        .filter(|c| c.lambda.is_e_restricted(e))
        .filter(|c| !(special && n % 2 == 0 && c.f == n / 2))
        .collect())
}

/// A witness pair with the branch of the construction that produced it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct B3Witness {
    pub pair: WitnessPair,
    pub case: String,
}

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn ones(k: i64) -> Vec<u32> {
    vec![1; k.max(0) as usize]
}

/// The explicit pair `(ℓ, μ) < (f, λ)` forcing singularity when `e <= n-2`
/// and `r = ±q^a`.
pub fn b3_witness(n: u32, spec: &ParamSpec) -> Result<B3Witness, ClassifyError> {
    let e = match spec.e() {
        Some(e) if e + 2 <= n => e as i64,
        _ => return Err(ClassifyError::OutOfRegime("needs e <= n-2".into())),
    };
    let Some((_, a)) = spec.r_normalized_power() else {
        return Err(ClassifyError::OutOfRegime("needs r = ±q^a".into()));
    };
    let special = spec
        .r_is_special()
        .known()
        .ok_or_else(|| ClassifyError::Undecidable("whether r is q^-1 or -q".into()))?;
    let ni = n as i64;
    let b = a as i64 + 1;
    let even = |x: i64| x.rem_euclid(2) == 0;
    // (ℓ numerator, μ, f numerator, λ, case); the cell levels are halves
    let choice: Option<(i64, Vec<u32>, i64, Vec<u32>, &str)> = if !special {
        if even(ni - b) {
            let mut mu = vec![2];
            mu.extend(ones(b));
            Some((ni - b - 2, mu, ni - b, ones(b), "case 1, n-b even"))
        } else if b != e - 1 && b != e - 2 {
            if b != ni - 3 {
                let mut mu = vec![3, 2];
                mu.extend(ones(b));
                let mut la = vec![2, 2];
                la.extend(ones(b - 1));
                Some((ni - b - 5, mu, ni - b - 3, la, "case 1.1"))
            } else if spec.p() == Some(2) {
                return Err(ClassifyError::OutOfRegime(
                    "characteristic 2 with b = n-3: r = q^-1, nothing to construct".into(),
                ));
            } else if even(ni) {
                Some((
                    ni - 4,
                    vec![3, 1],
                    ni - 2,
                    vec![2],
                    "case 1.1, b = n-3, n even",
                ))
            } else {
                Some((
                    ni - 5,
                    vec![2, 2, 1],
                    ni - 3,
                    vec![1, 1, 1],
                    "case 1.1, b = n-3, n odd",
                ))
            }
        } else if b == e - 2 {
            if even(ni) {
                if e > 4 {
                    Some((
                        ni - 6,
                        vec![5, 1],
                        ni - 4,
                        vec![4],
                        "case 1.2, n even, e > 4",
                    ))
                } else {
                    None
                }
            } else if e != 5 {
                Some((
                    ni - 7,
                    vec![4, 2, 1],
                    ni - 5,
                    vec![3, 1, 1],
                    "case 1.2, n odd, e != 5",
                ))
            } else {
                Some((
                    ni - 5,
                    vec![2, 1, 1, 1],
                    ni - 3,
                    vec![1, 1, 1],
                    "case 1.2, n odd, e = 5",
                ))
            }
        } else if !even(ni) {
            if e != 3 {
                Some((
                    ni - 5,
                    vec![3, 2],
                    ni - 3,
                    vec![2, 1],
                    "case 1.3, n odd, e != 3",
                ))
            } else {
                Some((
                    ni - 5,
                    vec![2, 2, 1],
                    ni - 1,
                    vec![1],
                    "case 1.3, n odd, e = 3",
                ))
            }
        } else if ni >= 6 {
            Some((
                ni - 6,
                vec![3, 3],
                ni - 2,
                vec![1, 1],
                "case 1.3, n even, n >= 6",
            ))
        } else {
            Some((0, vec![2, 2], 4, vec![], "case 1.3, n = 4"))
        }
    } else if e == 2 {
        if even(ni) {
            Some((
                ni - 4,
                vec![2, 1, 1],
                ni - 2,
                vec![1, 1],
                "case 2.1, n even",
            ))
        } else {
            Some((ni - 5, vec![2, 2, 1], ni - 1, vec![1], "case 2.1, n odd"))
        }
    } else {
        let r_inv = spec.r_equals(1, -1) == Tri::True;
        match (even(ni), r_inv) {
            (true, true) => Some((
                ni - 4,
                vec![3, 1],
                ni - 2,
                vec![2],
                "case 2.2, n even, r = q^-1",
            )),
            (true, false) => Some((
                ni - 4,
                vec![2, 1, 1],
                ni - 2,
                vec![1, 1],
                "case 2.2, n even, r = -q",
            )),
            (false, true) if ni >= 7 && e != 5 => Some((
                ni - 7,
                vec![3, 3, 1],
                ni - 5,
                vec![3, 1, 1],
                "case 2.2, r = q^-1, n >= 7, e != 5",
            )),
            (false, true) if ni >= 7 => Some((
                ni - 7,
                vec![3, 2, 2],
                ni - 5,
                vec![2, 2, 1],
                "case 2.2, r = q^-1, n >= 7, e = 5",
            )),
            (false, true) => Some((
                0,
                vec![2, 1, 1, 1],
                2,
                vec![1, 1, 1],
                "case 2.2, r = q^-1, n = 5",
            )),
            (false, false) if ni >= 7 && e != 5 => Some((
                ni - 7,
                vec![3, 2, 2],
                ni - 5,
                vec![3, 1, 1],
                "case 2.2, r = -q, n >= 7, e != 5",
            )),
            (false, false) if ni >= 7 => Some((
                ni - 7,
                vec![3, 3, 1],
                ni - 5,
                vec![3, 2],
                "case 2.2, r = -q, n >= 7, e = 5",
            )),
            (false, false) => Some((
                0,
                vec![1, 1, 1, 1, 1],
                2,
                vec![1, 1, 1],
                "case 2.2, r = -q, n = 5",
            )),
        }
    };
    if let Some((l2, mu, f2, la, case)) = choice {
        let make = |x2: i64, p: &[u32]| {
            if x2 < 0 || !even(x2) {
                return None;
            }
            CellIndex::new(n, (x2 / 2) as u32, part(p)).ok()
        };
        if let (Some(lower), Some(upper)) = (make(l2, &mu), make(f2, &la)) {
            return Ok(B3Witness {
                pair: WitnessPair { lower, upper },
                case: case.into(),
            });
        }
    }
    search_witness(n, spec)
}

/// Fallback: the first pair `(ℓ, μ) < (f, λ)` with `f >= 1`, `S^λ = D^λ ≠ 0`
/// and `μ` `(f - ℓ, λ)`-admissible.
fn search_witness(n: u32, spec: &ParamSpec) -> Result<B3Witness, ClassifyError> {
    for upper in cells(n).into_iter().filter(|c| c.f > 0) {
        if !hecke_simple(&upper.lambda, spec) {
            continue;
        }
        for l in 0..upper.f {
            for mu in partitions(n - 2 * l) {
                if is_admissible(&mu, &upper.lambda, upper.f - l, spec)? {
                    return Ok(B3Witness {
                        pair: WitnessPair {
                            lower: CellIndex::new(n, l, mu)?,
                            upper,
                        },
                        case: "admissibility search".into(),
                    });
                }
            }
        }
    }
    Err(ClassifyError::OutOfRegime(
        "no admissible pair found".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::SymbolicSpec;

    fn sym(e: Option<u32>, p: Option<u64>, sign: i8, exp: i32) -> ParamSpec {
        let r = RForm::Power { sign, exp };
        let qe = e.map(|e| if e % 2 == 0 && p != Some(2) { -1 } else { 1 });
        ParamSpec::Symbolic(SymbolicSpec::new(e, p, r, qe).unwrap())
    }

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn cell(n: u32, f: u32, l: &str) -> CellIndex {
        CellIndex::new(n, f, pt(l)).unwrap()
    }

    #[test]
    fn s_sets() {
        let s3: BTreeSet<_> = [(1, -3), (-1, 3), (1, 0), (-1, 0)].into_iter().collect();
        assert_eq!(set_s(3), s3);
        assert!(set_s(2).is_empty());
        let s4 = set_s(4);
        assert!(s4.is_superset(&s3));
        for x in [(1, -5), (-1, 5), (1, -1), (-1, -1), (1, 1), (-1, 1)] {
            assert!(s4.contains(&x));
        }
        for n in 2..10 {
            assert!(set_s(n).is_subset(&set_s(n + 1)));
        }
    }

    #[test]
    fn z_sets() {
        let z5: BTreeSet<i64> = [1, 2, 3, -2, -4, -6, -1].into_iter().collect();
        assert_eq!(set_z(5), z5);
        let z4: BTreeSet<i64> = [1, 2, -2, -4].into_iter().collect();
        assert_eq!(set_z(4), z4);
        assert!(set_z(6).contains(&-1) && set_z(6).contains(&-2));
        for n in 3..10 {
            assert!(set_z(n).is_subset(&set_z(n + 1)));
        }
    }

    #[test]
    fn bmw_examples() {
        let v = classify_bmw(6, &sym(Some(7), None, -1, 1)).unwrap();
        assert_eq!((v.singular, v.clause.as_str()), (Some(true), "main.1.2.a"));
        let v = classify_bmw(3, &sym(Some(12), None, 1, -1)).unwrap();
        assert_eq!((v.singular, v.clause.as_str()), (Some(false), "main.1.2.b"));
        let v = classify_bmw(3, &sym(Some(4), None, 1, -1)).unwrap();
        assert_eq!(v.singular, Some(true));
        let v = classify_bmw(7, &sym(Some(4), None, 1, 5)).unwrap();
        assert_eq!((v.singular, v.clause.as_str()), (Some(true), "main.2"));
        assert!(matches!(v.witness, Some(Witness::Pair(_))));
        let v = classify_bmw(5, &sym(Some(12), None, 1, -1)).unwrap();
        assert_eq!(v.singular, Some(false));
    }

    #[test]
    fn unknown_sign_is_indeterminate() {
        let s = ParamSpec::Symbolic(
            SymbolicSpec::new(Some(3), None, RForm::Power { sign: -1, exp: 2 }, None).unwrap(),
        );
        let v = classify_bmw(4, &s).unwrap();
        assert_eq!(v.singular, None);
    }

    #[test]
    fn generic_r_in_s() {
        let v = classify_bmw(3, &sym(None, None, 1, -3)).unwrap();
        assert_eq!((v.singular, v.clause.as_str()), (Some(true), "main.1.1"));
        assert!(v.witness.is_some());
        let v = classify_bmw(3, &sym(None, None, 1, 7)).unwrap();
        assert_eq!(v.singular, Some(false));
    }

    #[test]
    fn delta_values() {
        for (s, a) in [(1, -1), (-1, 1)] {
            let DeltaValue::Symbolic(d) = delta_of(&sym(None, None, s, a)).unwrap() else {
                panic!()
            };
            assert!(d.is_zero());
        }
        let d = delta_of(&ParamSpec::concrete(5, 2, 1).unwrap()).unwrap();
        assert_eq!(d, DeltaValue::Field(Fp::new(1, 5)));
    }

    #[test]
    fn brauer_examples() {
        let s = |n, d, p| classify_brauer(n, d, p).unwrap().singular;
        assert_eq!(s(5, BrauerDelta::Integer(3), None), Some(true));
        assert_eq!(s(5, BrauerDelta::Integer(0), None), Some(false));
        assert_eq!(s(3, BrauerDelta::Integer(0), Some(2)), Some(true));
        assert_eq!(s(6, BrauerDelta::Integer(2), Some(5)), Some(true));
        assert_eq!(s(6, BrauerDelta::NonInteger, Some(3)), Some(false));
        assert_eq!(s(7, BrauerDelta::Integer(0), None), Some(false));
        assert_eq!(s(9, BrauerDelta::Integer(0), None), Some(true));
    }

    #[test]
    fn criterion_examples() {
        assert!(nonzero_gram_criterion(&cell(3, 0, "(2,1)"), &sym(Some(7), None, 1, 11)).unwrap());
        assert!(!nonzero_gram_criterion(&cell(3, 1, "(1)"), &sym(None, None, 1, -3)).unwrap());
        assert!(!nonzero_gram_criterion(&cell(3, 0, "(3)"), &sym(Some(2), None, 1, 0)).unwrap());
    }

    #[test]
    fn simple_label_counts() {
        let generic =
            ParamSpec::Symbolic(SymbolicSpec::new(Some(3), None, RForm::Generic, None).unwrap());
        assert_eq!(simple_labels(4, &generic).unwrap().len(), 7);
        assert_eq!(
            simple_labels(4, &sym(Some(3), None, 1, -1)).unwrap().len(),
            6
        );
        let l = simple_labels(3, &sym(None, None, -1, 1)).unwrap();
        assert_eq!(l.len(), 4);
    }

    #[test]
    fn witness_examples() {
        let w = b3_witness(6, &sym(Some(4), None, 1, 1)).unwrap().pair;
        assert_eq!(
            (w.lower, w.upper),
            (cell(6, 1, "(2,1,1)"), cell(6, 2, "(1,1)"))
        );
        let w = b3_witness(4, &sym(Some(2), None, -1, 1)).unwrap().pair;
        assert_eq!(
            (w.lower, w.upper),
            (cell(4, 0, "(2,1,1)"), cell(4, 1, "(1,1)"))
        );
        let w = b3_witness(5, &sym(Some(3), None, -1, 1)).unwrap().pair;
        assert_eq!(
            (w.lower, w.upper),
            (cell(5, 0, "(1,1,1,1,1)"), cell(5, 1, "(1,1,1)"))
        );
        assert!(b3_witness(5, &sym(None, None, 1, 1)).is_err());
    }

    #[test]
    fn witness_is_well_formed() {
        for n in 4..=9u32 {
            for e in 2..=n - 2 {
                for sign in [1i8, -1] {
                    for a in 0..e as i32 {
                        let s = sym(Some(e), None, sign, a);
                        let w = b3_witness(n, &s).unwrap().pair;
                        assert!(w.lower.f < w.upper.f, "n={n} e={e} r={sign}q^{a}: {w}");
                    }
                }
            }
        }
    }
}
