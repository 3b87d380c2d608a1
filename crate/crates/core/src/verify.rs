//! Named verification suites: closed-form determinants, defining relations,
//! dimension counts and oracle agreement. Each item reports computed and
//! expected values side by side.

use serde::{Deserialize, Serialize};

use crate::bmw::{BmwAlgebra, BmwElem, GenKind};
use crate::cellmod::{gram, gram_det, CellError, GramBackend};
use crate::coeff::LaurentPoly;
use crate::combin::{cells, CellIndex, Partition};
use crate::oracle::{sweep, sweep_specs};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, computed: impl ToString, expected: impl ToString) -> Self {
        let (computed, expected) = (computed.to_string(), expected.to_string());
        Check {
            name: name.into(),
            pass: computed == expected,
            computed,
            expected,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub const SUITES: [&str; 4] = ["b1-formulas", "relations", "dims", "oracle-agreement"];

/// One closed-form Gram determinant with `r = sign * q^a` substituted.
#[derive(Clone, Debug)]
pub struct DetFormula {
    pub label: &'static str,
    pub n: u32,
    pub f: u32,
    pub lambda: Vec<u32>,
    pub r: (i32, i32),
    pub expected: LaurentPoly,
}

fn qi(a: i32) -> LaurentPoly {
    LaurentPoly::quantum_int(a)
}

/// `1 + q^k`.
fn one_plus(k: i32) -> LaurentPoly {
    &LaurentPoly::one() + &LaurentPoly::q_pow(k)
}

fn product(fs: &[(LaurentPoly, u32)], c: i64) -> LaurentPoly {
    fs.iter()
        .fold(LaurentPoly::int(c), |acc, (x, k)| &acc * &x.pow(*k))
}

/// The seven published determinants of the small cells at `r ∈ {q^-1, -q}`.
pub fn b1_table() -> Vec<DetFormula> {
    let (rq, rm) = ((1, -1), (-1, 1));
    let f1 = || product(&[(one_plus(4), 1)], 1);
    let f6 = || product(&[(qi(2), 4), (qi(3), 15), (one_plus(6), 4)], -1);
    let f7 = || {
        product(
            &[(one_plus(2), 1), (one_plus(4), 10), (one_plus(6), 1)],
            -64,
        )
    };
    let row = |label, n, f, lambda: &[u32], r, expected| DetFormula {
        label,
        n,
        f,
        lambda: lambda.to_vec(),
        r,
        expected,
    };
    vec![
        row("(1) G(1,(1)) n=3 r=q^-1", 3, 1, &[1], rq, f1()),
        row("(1) G(1,(1)) n=3 r=-q", 3, 1, &[1], rm, f1()),
        row(
            "(2) G(1,(3)) n=5 r=-q",
            5,
            1,
            &[3],
            rm,
            product(&[(qi(2), 10), (qi(3), 14), (one_plus(8), 1)], 32),
        ),
        row(
            "(3) G(1,(3)) n=5 r=q^-1",
            5,
            1,
            &[3],
            rq,
            product(&[(qi(2), 10), (qi(3), 11), (one_plus(4), 6)], -1),
        ),
        row(
            "(4) G(1,(1,1,1)) n=5 r=-q",
            5,
            1,
            &[1, 1, 1],
            rm,
            product(&[(qi(3), 1), (one_plus(4), 6)], 1),
        ),
        row(
            "(5) G(1,(1,1,1)) n=5 r=q^-1",
            5,
            1,
            &[1, 1, 1],
            rq,
            product(&[(qi(3), 4), (one_plus(8), 1)], 32),
        ),
        row("(6) G(1,(2,1)) n=5 r=q^-1", 5, 1, &[2, 1], rq, f6()),
        row("(6) G(1,(2,1)) n=5 r=-q", 5, 1, &[2, 1], rm, f6()),
        row("(7) G(2,(1)) n=5 r=q^-1", 5, 2, &[1], rq, f7()),
        row("(7) G(2,(1)) n=5 r=-q", 5, 2, &[1], rm, f7()),
    ]
}

/// `det G_{f,λ}` with `r = sign * q^a` substituted.
pub fn substituted_det(cell: &CellIndex, sign: i32, a: i32) -> Result<LaurentPoly, CellError> {
    let g = gram(cell, GramBackend::Inflation)?;
    Ok(gram_det(&g.substitute_r(sign, a)))
}

/// The unit-free part of `x`, rendered; `"0"` for zero.
pub fn unit_core(x: &LaurentPoly) -> String {
    match x.normalize_unit() {
        Ok((_, core)) => core.to_string(),
        Err(_) => "0".into(),
    }
}

pub fn b1_formulas() -> Result<Report, CellError> {
    let mut checks = Vec::new();
    for row in b1_table() {
        let cell =
            CellIndex::new(row.n, row.f, Partition::new(row.lambda.clone()).unwrap()).unwrap();
        let det = substituted_det(&cell, row.r.0, row.r.1)?;
        checks.push(Check::new(
            row.label,
            unit_core(&det),
            unit_core(&row.expected),
        ));
    }
    for n in [2, 4] {
        let cell = CellIndex::new(n, n / 2, Partition::empty()).unwrap();
        for (sign, a) in [(1, -1), (-1, 1)] {
            let det = substituted_det(&cell, sign, a)?;
            checks.push(Check::new(
                format!(
                    "G({},()) n={n} r={}",
                    n / 2,
                    if sign > 0 { "q^-1" } else { "-q" }
                ),
                det,
                "0",
            ));
        }
    }
    Ok(Report {
        suite: "b1-formulas".into(),
        checks,
    })
}

/// The defining relations of `B_n` on generators, checked exactly.
pub fn relations(n: usize) -> Report {
    let a = BmwAlgebra::get(n);
    let one = a.one();
    let w = LaurentPoly::omega();
    let winv = LaurentPoly::omega_inv_pow(1);
    let r = LaurentPoly::r();
    let ri = LaurentPoly::r_pow(-1);
    let m = |x: &BmwElem, y: &BmwElem| a.mul(x, y).unwrap();
    let g = |k: GenKind, i: usize| a.generator(k, i).unwrap();
    let show = |x: &BmwElem| a.display(x);
    let mut checks = Vec::new();
    let mut push = |name: String, lhs: &BmwElem, rhs: &BmwElem| {
        checks.push(Check::new(name, show(lhs), show(rhs)));
    };
    for i in 1..n {
        let t = g(GenKind::T, i);
        let ti = g(GenKind::TInv, i);
        let e = g(GenKind::E, i);
        push(format!("T{i} T{i}^-1 = 1"), &m(&t, &ti), &one);
        let rhs = one.sub(&t.sub(&ti).unwrap().scale(&winv)).unwrap();
        push(format!("E{i} = 1 - (T{i} - T{i}^-1)/w"), &e, &rhs);
        push(format!("E{i} T{i} = r^-1 E{i}"), &m(&e, &t), &e.scale(&ri));
        push(format!("T{i} E{i} = r^-1 E{i}"), &m(&t, &e), &e.scale(&ri));
        push(
            format!("E{i}^2 = delta E{i}"),
            &m(&e, &e),
            &e.scale(&LaurentPoly::delta()),
        );
        let rhs = one
            .add(&t.scale(&w))
            .unwrap()
            .sub(&e.scale(&(&w * &ri)))
            .unwrap();
        push(
            format!("T{i}^2 = 1 + w T{i} - w r^-1 E{i}"),
            &m(&t, &t),
            &rhs,
        );
        for j in 1..n {
            let tj = g(GenKind::T, j);
            let tji = g(GenKind::TInv, j);
            let ej = g(GenKind::E, j);
            if i.abs_diff(j) == 1 {
                push(
                    format!("T{i} T{j} T{i} = T{j} T{i} T{j}"),
                    &m(&m(&t, &tj), &t),
                    &m(&m(&tj, &t), &tj),
                );
                push(
                    format!("E{i} T{j} E{i} = r E{i}"),
                    &m(&m(&e, &tj), &e),
                    &e.scale(&r),
                );
                push(
                    format!("E{i} T{j}^-1 E{i} = r^-1 E{i}"),
                    &m(&m(&e, &tji), &e),
                    &e.scale(&ri),
                );
                push(format!("E{i} E{j} E{i} = E{i}"), &m(&m(&e, &ej), &e), &e);
            } else if i < j && j - i > 1 {
                push(format!("T{i} T{j} = T{j} T{i}"), &m(&t, &tj), &m(&tj, &t));
                push(format!("E{i} E{j} = E{j} E{i}"), &m(&e, &ej), &m(&ej, &e));
                push(format!("T{i} E{j} = E{j} T{i}"), &m(&t, &ej), &m(&ej, &t));
                push(format!("E{i} T{j} = T{j} E{i}"), &m(&e, &tj), &m(&tj, &e));
            }
        }
    }
    Report {
        suite: format!("relations n={n}"),
        checks,
    }
}

/// `(2n-1)!!`.
pub fn double_factorial_odd(n: u32) -> u128 {
    (1..=n as u128).map(|k| 2 * k - 1).product()
}

/// `Σ dim Δ(f,λ)^2 = (2n-1)!!`, and the normal-word basis has that size.
pub fn dims(n: u32) -> Report {
    let sum: u128 = cells(n).iter().map(|c| c.dim() * c.dim()).sum();
    let expect = double_factorial_odd(n);
    let mut checks = vec![Check::new(format!("sum of squares n={n}"), sum, expect)];
    if n <= 6 {
        checks.push(Check::new(
            format!("basis size n={n}"),
            BmwAlgebra::get(n as usize).dim(),
            expect,
        ));
    }
    Report {
        suite: format!("dims n={n}"),
        checks,
    }
}

/// Oracle against the closed-form classification over the regime
/// representatives of the given primes.
pub fn oracle_agreement(ns: &[u32], primes: &[u64]) -> Result<Report, CellError> {
    let specs = sweep_specs(primes, true);
    let rows = sweep(ns, &specs)?;
    let checks = rows
        .iter()
        .map(|row| {
            let name = format!(
                "n={} p={} q0={} r0={} ({})",
                row.n, row.p, row.q0, row.r0, row.clause
            );
            let theorem = match row.theorem {
                Some(b) => b.to_string(),
                None => "undecided".into(),
            };
            Check::new(name, row.oracle, theorem)
        })
        .collect();
    Ok(Report {
        suite: "oracle-agreement".into(),
        checks,
    })
}
