//! Acceptance suite: one PASS/FAIL line per criterion. A criterion that
//! fails in exactly its documented way is reported as FAIL without failing
//! the run; anything else exits nonzero.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bmw_core::bmw::{BmwAlgebra, BmwElem, GenKind};
use bmw_core::cellmod::{
    act, content_product, gram_matrix, gram_rank, gram_via_inflation, CellVector,
};
use bmw_core::classify::{b3_witness, classify_brauer, set_z, BrauerDelta};
use bmw_core::coeff::{LaurentPoly, ParamSpec};
use bmw_core::combin::{cells, is_admissible, partitions, std_tableaux, CellIndex, Partition};
use bmw_core::hecke::{specht_rank, HeckeElem};
use bmw_core::oracle::{sweep, sweep_specs, DEFAULT_PRIMES};
use bmw_core::verify::{b1_table, dims, relations, substituted_det, unit_core};

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails the criterion as written, in the way recorded in the notes.
    Known(String),
}

fn cell(n: u32, f: u32, parts: &[u32]) -> CellIndex {
    CellIndex::new(n, f, Partition::new(parts.to_vec()).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// Brauer algebra brute force, independent of the BMW code: half diagrams on
// n points with f arcs and one free point, paired by stacking.

fn half_diagrams(n: usize, f: usize) -> Vec<Vec<Option<usize>>> {
    fn go(
        partner: &mut Vec<Option<usize>>,
        free: &mut Vec<bool>,
        i: usize,
        arcs: usize,
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        let n = partner.len();
        if i == n {
            if arcs == 0 {
                out.push(partner.clone());
            }
            return;
        }
        if partner[i].is_some() || free[i] {
            return go(partner, free, i + 1, arcs, out);
        }
        free[i] = true;
        go(partner, free, i + 1, arcs, out);
        free[i] = false;
        if arcs > 0 {
            for j in i + 1..n {
                if partner[j].is_none() && !free[j] {
                    partner[i] = Some(j);
                    partner[j] = Some(i);
                    go(partner, free, i + 1, arcs - 1, out);
                    partner[i] = None;
                    partner[j] = None;
                }
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; n], &mut vec![false; n], 0, f, &mut out);
    out
}

/// `<x, y>` at `δ = 0` for `λ = (1)`: 1 if the free points join and no loop
/// closes, else 0.
fn brauer_form(x: &[Option<usize>], y: &[Option<usize>]) -> i128 {
    let n = x.len();
    let mut seen = vec![false; n];
    for a in (0..n).filter(|&a| x[a].is_none()) {
        let mut cur = a;
        seen[cur] = true;
        loop {
            match y[cur] {
                None => break,
                Some(b) => {
                    seen[b] = true;
                    match x[b] {
                        None => return 0,
                        Some(c) => {
                            seen[c] = true;
                            cur = c;
                        }
                    }
                }
            }
        }
    }
    if seen.iter().all(|&s| s) {
        1
    } else {
        0
    }
}

fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn brauer_det(n: usize, f: usize) -> i128 {
    let hs = half_diagrams(n, f);
    let g = hs
        .iter()
        .map(|x| hs.iter().map(|y| brauer_form(x, y)).collect())
        .collect();
    det_i128(g)
}

/// Sum of the numerator coefficients, i.e. the value at `q = r = 1`.
fn at_one(x: &LaurentPoly) -> i128 {
    x.numerator_terms()
        .map(|(_, c)| c.to_string().parse::<i128>().unwrap())
        .sum()
}

fn criterion_1() -> Outcome {
    let mut lines = Vec::new();
    let mut mismatched = Vec::new();
    for row in b1_table() {
        let c = cell(row.n, row.f, &row.lambda);
        let det = substituted_det(&c, row.r.0, row.r.1).unwrap();
        let (got, want) = (unit_core(&det), unit_core(&row.expected));
        if got == want {
            lines.push(format!("{} ok", row.label));
        } else {
            mismatched.push((row, det, got, want));
        }
    }
    if mismatched.is_empty() {
        return Outcome::Pass(format!("{} formulas match", lines.len()));
    }
    // the documented case: only (7) differs, by exactly a factor 2, and the
    // brute-force Brauer determinant at q = 1 agrees with the computed value
    let brauer = brauer_det(5, 2).abs();
    let brauer3 = brauer_det(3, 1).abs();
    let mut known = true;
    for (row, _, got, want) in &mismatched {
        let got = got.parse::<LaurentPoly>().unwrap();
        let want = want.parse::<LaurentPoly>().unwrap();
        known &= row.label.starts_with("(7)") && got.scale_int(2) == want && at_one(&got) == brauer;
    }
    known &= brauer3 == 2;
    let detail = format!(
        "{} of {} match; (7) det G(2,(1)) has 2^5 where the tabulated value has 2^6, \
         Brauer B_5(0) brute force gives |det| = {} = 2^17 (computed core at q=1: {})",
        lines.len(),
        lines.len() + mismatched.len(),
        brauer,
        at_one(&mismatched[0].2.parse::<LaurentPoly>().unwrap())
    );
    if known {
        Outcome::Known(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn criterion_2() -> Outcome {
    for n in [2, 4] {
        let c = cell(n, n / 2, &[]);
        if gram_matrix(&c)
            .unwrap()
            .entries
            .iter()
            .flatten()
            .all(|x| x.is_zero())
        {
            return Outcome::Fail(format!("G({},()) is zero before substitution", n / 2));
        }
        for (s, a) in [(1, -1), (-1, 1)] {
            let d = substituted_det(&c, s, a).unwrap();
            if !d.is_zero() {
                return Outcome::Fail(format!("n={n} r={s}q^{a}: det = {d}"));
            }
        }
    }
    Outcome::Pass("det G(1,()) and det G(2,()) vanish at r = q^-1 and r = -q".into())
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for n in 2..=5 {
        let r = relations(n);
        if let Some(c) = r.checks.iter().find(|c| !c.pass) {
            return Outcome::Fail(format!("n={n}: {}", c.name));
        }
        count += r.checks.len();
    }
    let (q, r) = (LaurentPoly::q(), LaurentPoly::r());
    let one = LaurentPoly::one();
    let lhs = &(&(&LaurentPoly::delta() * &r) * &(&q + &one)) * &(&q - &one);
    let rhs = &(&q + &r) * &(&(&q * &r) - &one);
    if lhs != rhs {
        return Outcome::Fail("delta formula".into());
    }
    for n in 1..=6 {
        if !dims(n).all_pass() {
            return Outcome::Fail(format!("dimension identity n={n}"));
        }
    }
    let mut triples = 0;
    for n in 2..=3usize {
        let a = BmwAlgebra::get(n);
        let d = a.dim();
        for i in 0..d {
            for j in 0..d {
                let xy = a.mul(&BmwElem::basis(n, i), &BmwElem::basis(n, j)).unwrap();
                for k in 0..d {
                    let z = BmwElem::basis(n, k);
                    let yz = a.mul(&BmwElem::basis(n, j), &z).unwrap();
                    if a.mul(&xy, &z).unwrap() != a.mul(&BmwElem::basis(n, i), &yz).unwrap() {
                        return Outcome::Fail(format!("associativity n={n} ({i},{j},{k})"));
                    }
                    triples += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [4usize, 5] {
        let a = BmwAlgebra::get(n);
        for _ in 0..1000 {
            let [i, j, k] = [0; 3].map(|_| rng.gen_range(0..a.dim()));
            let (x, y, z) = (
                BmwElem::basis(n, i),
                BmwElem::basis(n, j),
                BmwElem::basis(n, k),
            );
            let l = a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap();
            let r = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
            if l != r {
                return Outcome::Fail(format!("associativity n={n} ({i},{j},{k})"));
            }
            triples += 1;
        }
    }
    Outcome::Pass(format!(
        "{count} relation checks for n<=5, dimensions for n<=6, {triples} associativity triples"
    ))
}

fn criterion_4() -> Outcome {
    let specs = sweep_specs(&DEFAULT_PRIMES, true);
    let by_prime: BTreeMap<u64, usize> = DEFAULT_PRIMES
        .iter()
        .map(|&p| (p, specs.iter().filter(|s| s.p() == p).count()))
        .collect();
    let mut rows = sweep(&[2, 3, 4, 5], &specs).unwrap();
    let all = sweep_specs(&DEFAULT_PRIMES, false);
    rows.extend(sweep(&[2, 3, 4, 5], &all).unwrap());
    let bad: Vec<_> = rows.iter().filter(|r| !r.agrees()).collect();
    let detail = format!(
        "{}/{} agree over {} regimes and all {} specs, regimes per prime {:?} \
         (p = 2, 3 admit no q0 with q0^2 != 1)",
        rows.len() - bad.len(),
        rows.len(),
        specs.len(),
        all.len(),
        by_prime
    );
    if bad.is_empty() {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(format!("{detail}; first: {:?}", bad[0]))
    }
}

fn criterion_5() -> Outcome {
    let mut compared = 0;
    for n in 2..=4 {
        for c in cells(n).into_iter().filter(|c| c.f > 0) {
            if gram_via_inflation(&c).unwrap().entries != gram_matrix(&c).unwrap().entries {
                return Outcome::Fail(format!("inflation Gram differs at {c}, n={n}"));
            }
            compared += 1;
        }
    }
    let mut products = 0;
    for n in 2..=4usize {
        let a = BmwAlgebra::get(n);
        for f in 1..=n / 2 {
            let ds = a.basis().dfn(f).to_vec();
            let sym = a.basis().sym(f).to_vec();
            let (nd, ns) = (ds.len(), sym.len());
            let range = a.basis().level_range(f);
            let split = |x: usize| {
                let k = x - range.start;
                (k / (ns * nd), (k / nd) % ns, k % nd)
            };
            for x in range.clone() {
                for y in range.clone() {
                    let (u1, w1, v1) = split(x);
                    let (u2, w2, v2) = split(y);
                    let prod = a.mul(&BmwElem::basis(n, x), &BmwElem::basis(n, y)).unwrap();
                    let parts = a.level_parts(&prod, f).unwrap();
                    let h = HeckeElem::basis(sym[w1].clone())
                        .mul(&a.phi_f(&ds[v1], &ds[u2], f).unwrap())
                        .unwrap()
                        .mul(&HeckeElem::basis(sym[w2].clone()))
                        .unwrap();
                    let mut expect = BTreeMap::new();
                    if !h.is_zero() {
                        expect.insert((u1, v2), h);
                    }
                    if parts != expect {
                        return Outcome::Fail(format!("product rule n={n} f={f} ({x},{y})"));
                    }
                    products += 1;
                }
            }
        }
    }
    Outcome::Pass(format!(
        "{compared} cells equal entrywise; {products} level-f products follow the phi_f rule"
    ))
}

fn criterion_6() -> Outcome {
    let specs = sweep_specs(&DEFAULT_PRIMES, false);
    let mut checked = 0;
    let mut cases = BTreeSet::new();
    for spec in &specs {
        let ps = ParamSpec::Concrete(*spec);
        for n in 2..=5u32 {
            if spec.e() + 2 > n || spec.r_as_power().is_none() {
                continue;
            }
            let w = match b3_witness(n, &ps) {
                Ok(w) => w,
                Err(e) => return Outcome::Fail(format!("n={n} {ps}: {e}")),
            };
            let (lo, up) = (&w.pair.lower, &w.pair.upper);
            let rank = gram_rank(up, spec).unwrap();
            if rank >= up.dim() as usize {
                return Outcome::Fail(format!("n={n} {ps}: {} has full rank", up));
            }
            if is_admissible(&lo.lambda, &up.lambda, up.f - lo.f, &ps) != Ok(true) {
                return Outcome::Fail(format!("n={n} {ps}: {} not admissible", w.pair));
            }
            cases.insert(w.case);
            checked += 1;
        }
    }
    Outcome::Pass(format!(
        "{checked} (n, spec) pairs with e <= n-2, cases {cases:?}"
    ))
}

fn criterion_7() -> Outcome {
    let specs = sweep_specs(&DEFAULT_PRIMES, true);
    let mut checked = 0;
    for spec in &specs {
        let e = spec.e();
        for m in 1..=5u32 {
            for la in partitions(m) {
                let rank = specht_rank(&la, spec).unwrap();
                let std = std_tableaux(&la).len();
                if e > m && rank != std {
                    return Outcome::Fail(format!("{la} at {spec:?}: rank {rank} != {std}"));
                }
                if (rank > 0) != la.is_e_restricted(Some(e)) {
                    return Outcome::Fail(format!("{la} at e={e}: rank {rank}"));
                }
                checked += 1;
            }
        }
    }
    Outcome::Pass(format!("{checked} (lambda, spec) pairs"))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for n in 1..=4usize {
        let a = BmwAlgebra::get(n);
        let z = a.central_element();
        for i in 1..n {
            for k in [GenKind::T, GenKind::E] {
                let g = a.generator(k, i).unwrap();
                if a.mul(&z, &g).unwrap() != a.mul(&g, &z).unwrap() {
                    return Outcome::Fail(format!(
                        "n={n}: central element and {k:?}{i} do not commute"
                    ));
                }
            }
        }
        for c in cells(n as u32) {
            let scalar = content_product(&c);
            let nd = bmw_core::combin::dfn_count(c.f as usize, n) as usize;
            for t in 0..std_tableaux(&c.lambda).len() {
                for v in 0..nd {
                    let got = act(&c, t, v, &z).unwrap();
                    if got != CellVector::basis(&c, t, v).scale(&scalar) {
                        return Outcome::Fail(format!("n={n} cell {c} vector ({t},{v})"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Outcome::Pass(format!(
        "commutes for n<=4; scalar action on {checked} basis vectors"
    ))
}

fn criterion_9() -> Outcome {
    let s = |n, d, p| classify_brauer(n, d, p).unwrap().singular;
    let examples = [
        (s(5, BrauerDelta::Integer(3), None), Some(true)),
        (s(5, BrauerDelta::Integer(0), None), Some(false)),
        (s(3, BrauerDelta::Integer(0), Some(2)), Some(true)),
    ];
    if examples.iter().any(|(a, b)| a != b) {
        return Outcome::Fail(format!("examples {examples:?}"));
    }
    for n in [4i64, 5, 6] {
        // {1..n-2} ∪ {-2, -4, .., 4-2n} ∪ {-1, .., 4-n}
        let mut want: BTreeSet<i64> = (1..=n - 2).collect();
        let mut k = -2;
        while k >= 4 - 2 * n {
            want.insert(k);
            k -= 2;
        }
        let mut k = -1;
        while k >= 4 - n {
            want.insert(k);
            k -= 1;
        }
        if set_z(n as u32) != want {
            return Outcome::Fail(format!(
                "set_Z({n}) = {:?}, expected {want:?}",
                set_z(n as u32)
            ));
        }
    }
    Outcome::Pass("three examples and set_Z for n = 4, 5, 6".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("closed-form Gram determinants", criterion_1),
        ("vanishing of det G(n/2,()) for n = 2, 4", criterion_2),
        ("algebra soundness", criterion_3),
        ("oracle against theorem, n = 2..5", criterion_4),
        ("inflation consistency", criterion_5),
        ("witness validation", criterion_6),
        ("Hecke layer ranks", criterion_7),
        ("central element", criterion_8),
        ("Brauer classifier", criterion_9),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::Fail(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Outcome::Pass(d) => println!("criterion {}: PASS {name} ({secs:.1}s): {d}", i + 1),
            Outcome::Known(d) => println!(
                "criterion {}: FAIL {name} ({secs:.1}s): known deviation, {d}",
                i + 1
            ),
            Outcome::Fail(d) => {
                unexpected += 1;
                println!("criterion {}: FAIL {name} ({secs:.1}s): {d}", i + 1);
            }
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
