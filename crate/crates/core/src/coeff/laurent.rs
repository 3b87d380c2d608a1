//! Laurent polynomials in `q`, `r` with integer coefficients, localized at
//! `w = q - q^-1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Fp;
use super::CoeffError;

/// Exponent pair of `q^q * r^r`. Ordered lexicographically, `q` first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    pub q: i32,
    pub r: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, r: 0 };

    pub fn new(q: i32, r: i32) -> Self {
        Monomial { q, r }
    }

    fn mul(self, o: Monomial) -> Monomial {
        Monomial {
            q: self.q + o.q,
            r: self.r + o.r,
        }
    }

    fn div(self, o: Monomial) -> Monomial {
        Monomial {
            q: self.q - o.q,
            r: self.r - o.r,
        }
    }
}

/// Polynomial part of a [`LaurentPoly`]: sorted ascending, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct Num {
    terms: Vec<(Monomial, BigInt)>,
}

impl Num {
    fn zero() -> Self {
        Num { terms: Vec::new() }
    }

    fn monomial(c: BigInt, m: Monomial) -> Self {
        if c.is_zero() {
            Num::zero()
        } else {
            Num {
                terms: vec![(m, c)],
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_unsorted(mut v: Vec<(Monomial, BigInt)>) -> Self {
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Num { terms: out }
    }

    fn add(&self, o: &Num) -> Num {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Num { terms: out }
    }

    fn neg(&self) -> Num {
        Num {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    fn mul(&self, o: &Num) -> Num {
        if self.is_zero() || o.is_zero() {
            return Num::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].1, o.terms[0].0);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].1, self.terms[0].0);
        }
        let mut v = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                v.push((ma.mul(*mb), ca * cb));
            }
        }
        Num::from_unsorted(v)
    }

    fn mul_term(&self, c: &BigInt, m: Monomial) -> Num {
        if c.is_zero() {
            return Num::zero();
        }
        Num {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.last()
    }

    fn trailing(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    fn exact_div(&self, d: &Num) -> Option<Num> {
        let (dl, dlc) = d.leading()?.clone();
        if self.is_zero() {
            return Some(Num::zero());
        }
        let floor = self.trailing().unwrap().0.div(d.trailing().unwrap().0);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rl, rlc)) = rem.leading().cloned() {
            let m = rl.div(dl);
            if m < floor {
                return None;
            }
            let (qc, rr) = rlc.div_rem(&dlc);
            if !rr.is_zero() {
                return None;
            }
            rem = rem.add(&d.mul_term(&(-&qc), m));
            quot.push((m, qc));
        }
        quot.reverse();
        Some(Num { terms: quot })
    }

    /// Quick necessary test for divisibility by `q^2 - 1`: vanishing at `q = ±1`.
    fn vanishes_at_q_pm1(&self) -> bool {
        let mut plus: Vec<(i32, BigInt)> = Vec::new();
        let mut minus: Vec<(i32, BigInt)> = Vec::new();
        for (m, c) in &self.terms {
            acc(&mut plus, m.r, c.clone());
            let s = if m.q.rem_euclid(2) == 0 {
                c.clone()
            } else {
                -c
            };
            acc(&mut minus, m.r, s);
        }
        plus.iter().all(|(_, c)| c.is_zero()) && minus.iter().all(|(_, c)| c.is_zero())
    }
}

fn acc(v: &mut Vec<(i32, BigInt)>, k: i32, c: BigInt) {
    if let Some(e) = v.iter_mut().find(|(kk, _)| *kk == k) {
        e.1 += c;
    } else {
        v.push((k, c));
    }
}

fn omega_num() -> Num {
    Num {
        terms: vec![
            (Monomial::new(-1, 0), BigInt::from(-1)),
            (Monomial::new(1, 0), BigInt::from(1)),
        ],
    }
}

fn omega_pow(k: u32) -> Num {
    let mut out = Num::monomial(BigInt::one(), Monomial::ONE);
    let w = omega_num();
    for _ in 0..k {
        out = out.mul(&w);
    }
    out
}

/// An element of `Z[q^±1, r^±1][w^-1]` with `w = q - q^-1`, stored as
/// `numerator / w^omega_den` with `omega_den` minimal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    num: Num,
    omega_den: u32,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(c: i64) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn from_bigint(c: BigInt) -> Self {
        LaurentPoly {
            num: Num::monomial(c, Monomial::ONE),
            omega_den: 0,
        }
    }

    /// `c * q^a * r^b`.
    pub fn term(c: i64, a: i32, b: i32) -> Self {
        LaurentPoly {
            num: Num::monomial(BigInt::from(c), Monomial::new(a, b)),
            omega_den: 0,
        }
    }

    pub fn q() -> Self {
        Self::term(1, 1, 0)
    }

    pub fn r() -> Self {
        Self::term(1, 0, 1)
    }

    pub fn q_pow(a: i32) -> Self {
        Self::term(1, a, 0)
    }

    pub fn r_pow(b: i32) -> Self {
        Self::term(1, 0, b)
    }

    /// `w = q - q^-1`.
    pub fn omega() -> Self {
        LaurentPoly {
            num: omega_num(),
            omega_den: 0,
        }
    }

    /// `w^-k`.
    pub fn omega_inv_pow(k: u32) -> Self {
        LaurentPoly {
            num: Num::monomial(BigInt::one(), Monomial::ONE),
            omega_den: k,
        }
    }

    /// Quantum integer `[a] = (q^a - q^-a) / (q - q^-1)`.
    pub fn quantum_int(a: i32) -> Self {
        let num = LaurentPoly::q_pow(a) - LaurentPoly::q_pow(-a);
        let mut x = LaurentPoly {
            num: num.num,
            omega_den: 1,
        };
        x.normalize();
        x
    }

    /// The loop value `1 + (r - r^-1)/w`.
    pub fn delta() -> Self {
        let mut d = LaurentPoly {
            num: (LaurentPoly::r() - LaurentPoly::r_pow(-1)).num,
            omega_den: 1,
        };
        d.normalize();
        d + LaurentPoly::one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.omega_den == 0
            && self.num.terms.len() == 1
            && self.num.terms[0].0 == Monomial::ONE
            && self.num.terms[0].1.is_one()
    }

    pub fn omega_denominator(&self) -> u32 {
        self.omega_den
    }

    /// Numerator terms, ascending in `(q, r)` exponent order.
    pub fn numerator_terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.num.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.num.terms.len()
    }

    /// Integer value if the element is a constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.omega_den == 0 && self.num.terms.len() == 1 && self.num.terms[0].0 == Monomial::ONE
        {
            Some(self.num.terms[0].1.clone())
        } else {
            None
        }
    }

    /// True when no `r` appears.
    pub fn is_q_only(&self) -> bool {
        self.num.terms.iter().all(|(m, _)| m.r == 0)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.omega_den = 0;
            return;
        }
        let w = omega_num();
        while self.omega_den > 0 && self.num.vanishes_at_q_pm1() {
            match self.num.exact_div(&w) {
                Some(qt) => {
                    self.num = qt;
                    self.omega_den -= 1;
                }
                None => break,
            }
        }
    }

    fn lift_to(&self, k: u32) -> Num {
        debug_assert!(k >= self.omega_den);
        if k == self.omega_den {
            self.num.clone()
        } else {
            self.num.mul(&omega_pow(k - self.omega_den))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let mut x = LaurentPoly {
            num: self.num.mul_term(&BigInt::from(c), Monomial::ONE),
            omega_den: self.omega_den,
        };
        x.normalize();
        x
    }

    /// `self * c * q^a * r^b`; never changes the denominator.
    pub fn mul_monomial(&self, c: i64, a: i32, b: i32) -> Self {
        if c == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            num: self.num.mul_term(&BigInt::from(c), Monomial::new(a, b)),
            omega_den: self.omega_den,
        }
    }

    /// Split off the unit part: `self = sign * q^a r^b * w^wexp * core`.
    fn unit_parts(&self) -> Option<(i64, Monomial, i64, Num)> {
        if self.is_zero() {
            return None;
        }
        let w = omega_num();
        let mut num = self.num.clone();
        let mut wexp: i64 = -(self.omega_den as i64);
        while num.vanishes_at_q_pm1() {
            match num.exact_div(&w) {
                Some(qt) => {
                    num = qt;
                    wexp += 1;
                }
                None => break,
            }
        }
        let min_q = num.terms.iter().map(|(m, _)| m.q).min().unwrap();
        let min_r = num.terms.iter().map(|(m, _)| m.r).min().unwrap();
        let sign: i64 = if num.leading().unwrap().1.is_negative() {
            -1
        } else {
            1
        };
        let core = Num {
            terms: num
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.q - min_q, m.r - min_r), c * sign))
                .collect(),
        };
        Some((sign, Monomial::new(min_q, min_r), wexp, core))
    }

    fn unit_from_parts(sign: i64, m: Monomial, wexp: i64) -> LaurentPoly {
        let mut unit = LaurentPoly::term(sign, m.q, m.r);
        if wexp > 0 {
            unit = unit * LaurentPoly::omega().pow(wexp as u32);
        } else if wexp < 0 {
            unit.omega_den = (-wexp) as u32;
        }
        unit
    }

    /// Unit inverse. Only `±q^a r^b w^c` are invertible.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (sign, m, wexp, core) = self.unit_parts()?;
        let one = Num::monomial(BigInt::one(), Monomial::ONE);
        if core != one {
            return None;
        }
        Some(Self::unit_from_parts(
            sign,
            Monomial::new(-m.q, -m.r),
            -wexp,
        ))
    }

    /// Exact quotient in the localized ring, if it exists.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<Self> {
        let (sign, m, wexp, core) = d.unit_parts()?;
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let a = self * &Self::unit_from_parts(sign, Monomial::new(-m.q, -m.r), -wexp);
        let mut n = a.num.clone();
        let mut k = a.omega_den;
        // The core may still share the factors q - 1, q + 1 with w.
        for _ in 0..=core.terms.len() + 2 {
            if let Some(qt) = n.exact_div(&core) {
                let mut out = LaurentPoly {
                    num: qt,
                    omega_den: k,
                };
                out.normalize();
                return Some(out);
            }
            n = n.mul(&omega_num());
            k += 1;
        }
        None
    }

    /// Split `self = unit * core` with `unit = ±q^a r^b w^c` and `core` a
    /// polynomial with lowest `q`- and `r`-degree 0, not divisible by `w`,
    /// and positive leading coefficient.
    pub fn normalize_unit(&self) -> Result<(LaurentPoly, LaurentPoly), CoeffError> {
        let (sign, m, wexp, core) = self.unit_parts().ok_or(CoeffError::ZeroNormalization)?;
        Ok((
            Self::unit_from_parts(sign, m, wexp),
            LaurentPoly {
                num: core,
                omega_den: 0,
            },
        ))
    }

    /// Replace `r` by `sign * q^a`.
    pub fn substitute_r(&self, sign: i32, a: i32) -> Self {
        let v = self
            .num
            .terms
            .iter()
            .map(|(m, c)| {
                let s = if sign < 0 && m.r.rem_euclid(2) == 1 {
                    -c
                } else {
                    c.clone()
                };
                (Monomial::new(m.q + a * m.r, 0), s)
            })
            .collect();
        let mut x = LaurentPoly {
            num: Num::from_unsorted(v),
            omega_den: self.omega_den,
        };
        x.normalize();
        x
    }

    /// Evaluate at concrete `q0`, `r0` in a prime field.
    pub fn specialize(&self, q0: Fp, r0: Fp) -> Result<Fp, CoeffError> {
        let p = q0.modulus();
        if r0.modulus() != p {
            return Err(CoeffError::ModulusMismatch);
        }
        if q0.is_zero() || r0.is_zero() {
            return Err(CoeffError::ZeroParameter);
        }
        let qi = q0.inverse().unwrap();
        let w = q0 - qi;
        if w.is_zero() {
            return Err(CoeffError::OmegaNotInvertible);
        }
        let mut acc = Fp::new(0, p);
        for (m, c) in &self.num.terms {
            let cm = c.mod_floor(&BigInt::from(p)).to_u64().unwrap();
            acc = acc + Fp::new(cm, p) * q0.pow_i(m.q as i64) * r0.pow_i(m.r as i64);
        }
        Ok(acc * w.inverse().unwrap().pow_i(self.omega_den as i64))
    }

    /// Evaluate a `q`-only element at a field value; `r` is ignored.
    pub fn specialize_q(&self, q0: Fp) -> Result<Fp, CoeffError> {
        let one = Fp::new(1, q0.modulus());
        self.specialize(q0, one)
    }

    /// Lowest and highest `q`-exponents of the numerator.
    pub fn q_degree_range(&self) -> Option<(i32, i32)> {
        let lo = self.num.terms.iter().map(|(m, _)| m.q).min()?;
        let hi = self.num.terms.iter().map(|(m, _)| m.q).max()?;
        Some((lo, hi))
    }
}

// Raw numerator arithmetic used by the fraction-free determinant.
impl LaurentPoly {
    /// Drop the denominator: returns `self * w^k` as a plain Laurent polynomial.
    pub fn times_omega_pow(&self, k: u32) -> Self {
        if k >= self.omega_den {
            LaurentPoly {
                num: self.lift_to(k).clone(),
                omega_den: 0,
            }
            .with_den(0)
        } else {
            let mut x = LaurentPoly {
                num: self.num.clone(),
                omega_den: self.omega_den - k,
            };
            x.normalize();
            x
        }
    }

    fn with_den(mut self, k: u32) -> Self {
        self.omega_den = k;
        self.normalize();
        self
    }

    /// Divide by `w^k` (the inverse of [`times_omega_pow`](Self::times_omega_pow)).
    pub fn div_omega_pow(&self, k: u32) -> Self {
        let mut x = LaurentPoly {
            num: self.num.clone(),
            omega_den: self.omega_den + k,
        };
        x.normalize();
        x
    }

    /// Exact division of denominator-free elements in `Z[q^±, r^±]`.
    pub fn poly_exact_div(&self, d: &LaurentPoly) -> Option<Self> {
        debug_assert!(self.omega_den == 0 && d.omega_den == 0);
        self.num
            .exact_div(&d.num)
            .map(|num| LaurentPoly { num, omega_den: 0 })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.omega_den == o.omega_den {
            let mut x = LaurentPoly {
                num: self.num.add(&o.num),
                omega_den: self.omega_den,
            };
            x.normalize();
            return x;
        }
        let k = self.omega_den.max(o.omega_den);
        let mut x = LaurentPoly {
            num: self.lift_to(k).add(&o.lift_to(k)),
            omega_den: k,
        };
        x.normalize();
        x
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, o: &LaurentPoly) {
        if o.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = o.clone();
            return;
        }
        *self = &*self + o;
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, o: LaurentPoly) {
        *self += &o;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            num: self.num.neg(),
            omega_den: self.omega_den,
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, o: &LaurentPoly) {
        *self = &*self - o;
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        let mut x = LaurentPoly {
            num: self.num.mul(&o.num),
            omega_den: self.omega_den + o.omega_den,
        };
        if x.omega_den > 0 {
            x.normalize();
        }
        x
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, o: &LaurentPoly) {
        *self = &*self * o;
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::int(c)
    }
}

fn fmt_num(terms: &[(Monomial, BigInt)], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    // Display order: descending in r, then descending in q.
    let mut v: Vec<&(Monomial, BigInt)> = terms.iter().collect();
    v.sort_by(|a, b| (b.0.r, b.0.q).cmp(&(a.0.r, a.0.q)));
    for (i, (m, c)) in v.into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || (m.q == 0 && m.r == 0) {
            factors.push(abs.to_string());
        }
        match m.q {
            0 => {}
            1 => factors.push("q".into()),
            a => factors.push(format!("q^{a}")),
        }
        match m.r {
            0 => {}
            1 => factors.push("r".into()),
            b => factors.push(format!("r^{b}")),
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.omega_den == 0 {
            fmt_num(&self.num.terms, f)
        } else {
            write!(f, "(")?;
            fmt_num(&self.num.terms, f)?;
            if self.omega_den == 1 {
                write!(f, ")/w")
            } else {
                write!(f, ")/w^{}", self.omega_den)
            }
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LaurentPoly {
    type Err = CoeffError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(CoeffError::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, CoeffError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Int(t.parse().unwrap()));
        } else if matches!(c, 'q' | 'r' | 'w') {
            out.push(Tok::Sym(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(CoeffError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly, CoeffError> {
        let mut acc = if self.eat_op('-') {
            -self.term()?
        } else {
            self.eat_op('+');
            self.term()?
        };
        loop {
            if self.eat_op('+') {
                acc = acc + self.term()?;
            } else if self.eat_op('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, CoeffError> {
        let mut acc = self.power()?;
        loop {
            if self.eat_op('*') {
                acc = acc * self.power()?;
            } else if self.eat_op('/') {
                let d = self.power()?;
                let inv = d
                    .unit_inverse()
                    .ok_or_else(|| CoeffError::Parse(format!("division by non-unit {d}")))?;
                acc = acc * inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, CoeffError> {
        let base = self.atom()?;
        if self.eat_op('^') {
            let neg = self.eat_op('-');
            let e = match self.toks.get(self.pos) {
                Some(Tok::Int(v)) => v
                    .to_u32()
                    .ok_or_else(|| CoeffError::Parse("exponent too large".into()))?,
                _ => return Err(CoeffError::Parse("expected exponent".into())),
            };
            self.pos += 1;
            let p = base.pow(e);
            if neg {
                return p.unit_inverse().ok_or_else(|| {
                    CoeffError::Parse(format!("negative power of non-unit {base}"))
                });
            }
            return Ok(p);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentPoly, CoeffError> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| CoeffError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match t {
            Tok::Int(v) => Ok(LaurentPoly::from_bigint(v)),
            Tok::Sym('q') => Ok(LaurentPoly::q()),
            Tok::Sym('r') => Ok(LaurentPoly::r()),
            Tok::Sym('w') => Ok(LaurentPoly::omega()),
            Tok::Op('(') => {
                let v = self.expr()?;
                if !self.eat_op(')') {
                    return Err(CoeffError::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            Tok::Op('-') => Ok(-self.power()?),
            other => Err(CoeffError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
