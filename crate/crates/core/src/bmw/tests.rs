use super::*;

fn lp(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

#[test]
fn generator_examples() {
    let a = BmwAlgebra::get(2);
    let t = a.generator(GenKind::T, 1).unwrap();
    assert_eq!(t.terms().len(), 1);
    let (i, c) = t.terms().iter().next().unwrap();
    assert!(c.is_one());
    let w = a.word(*i);
    assert_eq!((w.f, w.w.letters()), (0, &[1u8][..]));
    let e = a.generator(GenKind::E, 1).unwrap();
    let (i, c) = e.terms().iter().next().unwrap();
    assert!(c.is_one());
    assert_eq!(a.word(*i).f, 1);
    let tinv = a.generator(GenKind::TInv, 1).unwrap();
    let w = LaurentPoly::omega();
    let expect = t
        .sub(&a.one().scale(&w))
        .unwrap()
        .add(&e.scale(&w))
        .unwrap();
    assert_eq!(tinv, expect);
    assert!(a.generator(GenKind::E, 2).is_err());
}

#[test]
fn product_examples() {
    let a = BmwAlgebra::get(2);
    let e = a.generator(GenKind::E, 1).unwrap();
    let t = a.generator(GenKind::T, 1).unwrap();
    assert_eq!(a.mul(&e, &e).unwrap(), e.scale(&LaurentPoly::delta()));
    // closed form of delta
    let closed = lp("(q + r)*(q*r - 1)/(r*(q+1)*(q-1))");
    assert_eq!(closed, LaurentPoly::delta());
    assert_eq!(a.mul(&e, &t).unwrap(), e.scale(&LaurentPoly::r_pow(-1)));
    assert_eq!(a.mul(&t, &e).unwrap(), e.scale(&LaurentPoly::r_pow(-1)));
    let a3 = BmwAlgebra::get(3);
    let x = a3.mul_words(&[Gen::E(2), Gen::T(1), Gen::E(2)]);
    assert_eq!(
        x,
        a3.eval_word(&[Gen::E(2)]).unwrap().scale(&LaurentPoly::r())
    );
    let x = a3.mul_words(&[Gen::E(2), Gen::TInv(1), Gen::E(2)]);
    assert_eq!(
        x,
        a3.eval_word(&[Gen::E(2)])
            .unwrap()
            .scale(&LaurentPoly::r_pow(-1))
    );
}

#[test]
fn relations_small() {
    for n in 2..=4 {
        check_relations(n);
    }
}

fn check_relations(n: usize) {
    let report = crate::verify::relations(n);
    let bad: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn relations_n5() {
    check_relations(5);
}

#[test]
fn dimension_counts() {
    for n in 1..=6 {
        let b = Basis::new(n);
        let expect: usize = (1..=n).map(|k| 2 * k - 1).product();
        let by_f: usize = (0..=n / 2)
            .map(|f| b.dfn(f).len().pow(2) * b.sym(f).len())
            .sum();
        assert_eq!(b.len(), expect);
        assert_eq!(by_f, expect);
    }
}

#[test]
fn associativity_exhaustive_n3() {
    let a = BmwAlgebra::get(3);
    let d = a.dim();
    for i in 0..d {
        let x = BmwElem::basis(3, i);
        for j in 0..d {
            let xy = a.mul(&x, &BmwElem::basis(3, j)).unwrap();
            for k in 0..d {
                let z = BmwElem::basis(3, k);
                let l = a.mul(&xy, &z).unwrap();
                let r = a
                    .mul(&x, &a.mul(&BmwElem::basis(3, j), &z).unwrap())
                    .unwrap();
                assert_eq!(l, r, "({i} {j}) {k}");
            }
        }
    }
}

#[test]
fn associativity_random_n4() {
    use rand::{Rng, SeedableRng};
    let a = BmwAlgebra::get(4);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let (i, j, k) = (
            rng.gen_range(0..a.dim()),
            rng.gen_range(0..a.dim()),
            rng.gen_range(0..a.dim()),
        );
        let (x, y, z) = (
            BmwElem::basis(4, i),
            BmwElem::basis(4, j),
            BmwElem::basis(4, k),
        );
        let l = a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap();
        let r = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
        assert_eq!(l, r, "({i} {j}) {k}");
    }
}

/// Products agree with direct evaluation of the concatenated diagram.
#[test]
fn products_match_direct_evaluation() {
    use rand::{Rng, SeedableRng};
    let a = BmwAlgebra::get(5);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (i, j) = (rng.gen_range(0..a.dim()), rng.gen_range(0..a.dim()));
        let mut word = a.word(i).generators(5);
        word.extend(a.word(j).generators(5));
        let direct = a.eval_word(&word).unwrap();
        let via_tables = a.mul(&BmwElem::basis(5, i), &BmwElem::basis(5, j)).unwrap();
        assert_eq!(direct, via_tables, "{i} {j}");
    }
}

fn random_elem(a: &BmwAlgebra, rng: &mut impl rand::Rng) -> BmwElem {
    let mut x = BmwElem::zero(a.n());
    for _ in 0..3 {
        let i = rng.gen_range(0..a.dim());
        let c = LaurentPoly::term(
            rng.gen_range(-3..=3),
            rng.gen_range(-2..=2),
            rng.gen_range(-1..=1),
        );
        x.add_term(i, c);
    }
    x
}

#[test]
fn star_is_anti_involution() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for n in 2..=4 {
        let a = BmwAlgebra::get(n);
        for _ in 0..60 {
            let x = random_elem(&a, &mut rng);
            let y = random_elem(&a, &mut rng);
            assert_eq!(a.star(&a.star(&x)), x);
            let l = a.star(&a.mul(&x, &y).unwrap());
            let r = a.mul(&a.star(&y), &a.star(&x)).unwrap();
            assert_eq!(l, r);
        }
    }
    let a = BmwAlgebra::get(3);
    let t12 = a.mul_words(&[Gen::T(1), Gen::T(2)]);
    assert_eq!(a.star(&t12), a.mul_words(&[Gen::T(2), Gen::T(1)]));
    let e1 = a.mul_words(&[Gen::E(1)]);
    assert_eq!(a.star(&e1), e1);
}

#[test]
fn filtration_is_respected() {
    for n in 2..=4 {
        let a = BmwAlgebra::get(n);
        for i in 0..a.dim() {
            let f = a.word(i).f;
            for j in (0..a.dim()).step_by(3) {
                for (x, y) in [(i, j), (j, i)] {
                    let p = a.mul(&BmwElem::basis(n, x), &BmwElem::basis(n, y)).unwrap();
                    assert!(p.terms().keys().all(|&k| a.word(k).f >= f));
                }
            }
        }
    }
}

#[test]
fn hecke_quotient_is_multiplicative() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for n in 2..=4 {
        let a = BmwAlgebra::get(n);
        for _ in 0..40 {
            let x = random_elem(&a, &mut rng);
            let y = random_elem(&a, &mut rng);
            let l = a.hecke_image(&a.mul(&x, &y).unwrap());
            let r = a.hecke_image(&x).mul(&a.hecke_image(&y)).unwrap();
            assert_eq!(l, r);
        }
    }
    let a = BmwAlgebra::get(2);
    let t = a.generator(GenKind::T, 1).unwrap();
    assert_eq!(a.hecke_image(&t), HeckeElem::generator(1, 2).unwrap());
    assert!(a
        .hecke_image(&a.generator(GenKind::E, 1).unwrap())
        .is_zero());
}

#[test]
fn e_fn_examples() {
    let a = BmwAlgebra::get(3);
    assert_eq!(a.e_fn(1).unwrap(), a.mul_words(&[Gen::E(2)]));
    assert_eq!(a.e_fn(0).unwrap(), a.one());
    assert!(a.e_fn(2).is_err());
    let a = BmwAlgebra::get(4);
    assert_eq!(a.e_fn(2).unwrap(), a.mul_words(&[Gen::E(3), Gen::E(1)]));
}

#[test]
fn jucys_murphy_elements() {
    let a = BmwAlgebra::get(3);
    assert_eq!(a.jucys_murphy(1).unwrap(), a.scalar(LaurentPoly::r()));
    let t = a.mul_words(&[Gen::T(1), Gen::T(1)]);
    assert_eq!(a.jucys_murphy(2).unwrap(), t.scale(&LaurentPoly::r()));
    assert!(a.jucys_murphy(4).is_err());
    for n in 2..=4 {
        let a = BmwAlgebra::get(n);
        let ls: Vec<BmwElem> = (1..=n).map(|i| a.jucys_murphy(i).unwrap()).collect();
        for x in &ls {
            for y in &ls {
                assert_eq!(a.mul(x, y).unwrap(), a.mul(y, x).unwrap());
            }
        }
        let z = a.central_element();
        for i in 1..n as u8 {
            for g in [Gen::T(i), Gen::E(i)] {
                let g = a.mul_words(&[g]);
                assert_eq!(a.mul(&z, &g).unwrap(), a.mul(&g, &z).unwrap(), "n={n}");
            }
        }
    }
}

#[test]
fn phi_examples() {
    let d = LaurentPoly::delta();
    let a = BmwAlgebra::get(2);
    let id = ReducedWord::identity(2);
    assert_eq!(
        a.phi_f(&id, &id, 1).unwrap(),
        HeckeElem::scalar(0, d.clone())
    );
    let a = BmwAlgebra::get(3);
    let id = ReducedWord::identity(3);
    assert_eq!(a.phi_f(&id, &id, 1).unwrap(), HeckeElem::scalar(1, d));
    let bad = ReducedWord::from_letters(3, vec![2, 1]).unwrap();
    assert!(a.dfn_index(1, bad.perm()).is_none());
    assert!(a.phi_f(&bad, &id, 1).is_err());
    for n in 2..=4 {
        let a = BmwAlgebra::get(n);
        for f in 1..=n / 2 {
            let ds = a.basis().dfn(f).to_vec();
            for u in &ds {
                for v in &ds {
                    let p = a.phi_f(u, v, f).unwrap();
                    assert_eq!(p.star(), a.phi_f(v, u, f).unwrap());
                }
            }
        }
    }
}

/// Products of level-`f` words modulo level `f + 1` follow the inflation rule.
#[test]
fn inflation_rule() {
    for n in 2..=4 {
        let a = BmwAlgebra::get(n);
        for f in 1..=n / 2 {
            let ds = a.basis().dfn(f).to_vec();
            let sym = a.basis().sym(f).to_vec();
            let nd = ds.len();
            let range = a.basis().level_range(f);
            let m = n - 2 * f;
            for x in range.clone().step_by(2) {
                for y in range.clone().step_by(3) {
                    let k1 = x - range.start;
                    let k2 = y - range.start;
                    let (u1, w1, v1) = (k1 / (sym.len() * nd), (k1 / nd) % sym.len(), k1 % nd);
                    let (u2, w2, v2) = (k2 / (sym.len() * nd), (k2 / nd) % sym.len(), k2 % nd);
                    let prod = a.mul(&BmwElem::basis(n, x), &BmwElem::basis(n, y)).unwrap();
                    let parts = a.level_parts(&prod, f).unwrap();
                    let phi = a.phi_f(&ds[v1], &ds[u2], f).unwrap();
                    let h = HeckeElem::basis(sym[w1].clone())
                        .mul(&phi)
                        .unwrap()
                        .mul(&HeckeElem::basis(sym[w2].clone()))
                        .unwrap();
                    let mut expect = BTreeMap::new();
                    if !h.is_zero() {
                        expect.insert((u1, v2), h);
                    }
                    assert_eq!(parts, expect, "n={n} f={f} x={x} y={y} m={m}");
                }
            }
        }
    }
}

#[test]
fn disk_cache_roundtrip() {
    let a = BmwAlgebra::new(3);
    a.warm_up();
    let dir = std::env::temp_dir().join(format!("bmw-cache-test-{}", std::process::id()));
    let path = a.cache_path(&dir);
    let written = a.save_tables(&path).unwrap();
    assert_eq!(written, 15 * 2 * 2);
    let b = BmwAlgebra::new(3);
    assert_eq!(b.load_tables(&path).unwrap(), written);
    for i in 0..15 {
        for j in 1..3u8 {
            assert_eq!(a.table(i, j, true), b.table(i, j, true));
            assert_eq!(a.table(i, j, false), b.table(i, j, false));
        }
    }
    let c = BmwAlgebra::new(4);
    assert!(matches!(c.load_tables(&path), Err(CacheError::Mismatch(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}
