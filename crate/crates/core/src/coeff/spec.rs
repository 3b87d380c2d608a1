//! Parameter regimes: symbolic `(e, p, r-form, sign of q^e)` or a concrete
//! point `(q0, r0)` of a prime field.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::field::{is_prime, Fp};
use super::laurent::LaurentPoly;
use super::CoeffError;

/// Three-valued truth.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn and(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }

    pub fn or(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::True, _) | (_, Tri::True) => Tri::True,
            (Tri::False, Tri::False) => Tri::False,
            _ => Tri::Unknown,
        }
    }

    pub fn not(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }

    pub fn known(self) -> Option<bool> {
        match self {
            Tri::True => Some(true),
            Tri::False => Some(false),
            Tri::Unknown => None,
        }
    }
}

/// Right-hand side of `q^m = ±1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignTarget {
    One,
    MinusOne,
}

/// What is known about `q^m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QPow {
    One,
    MinusOne,
    /// Neither `1` nor `-1`.
    Other,
    Unknown,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub enum RForm {
    Generic,
    /// `r = sign * q^exp`.
    Power {
        sign: i8,
        exp: i32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub struct SymbolicSpec {
    /// Order of `q^2`; `None` means infinite.
    pub e: Option<u32>,
    /// Characteristic; `None` means zero.
    pub p: Option<u64>,
    pub r: RForm,
    /// Sign of `q^e`, when known.
    pub q_e_sign: Option<i8>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct ConcreteSpec {
    pub q0: Fp,
    pub r0: Fp,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ParamSpec {
    Symbolic(SymbolicSpec),
    Concrete(ConcreteSpec),
}

impl SymbolicSpec {
    pub fn new(
        e: Option<u32>,
        p: Option<u64>,
        r: RForm,
        q_e_sign: Option<i8>,
    ) -> Result<Self, CoeffError> {
        if let Some(p) = p {
            if !is_prime(p) {
                return Err(CoeffError::NotPrime(p));
            }
        }
        if let Some(e) = e {
            if e < 2 {
                return Err(CoeffError::InvalidSpec(format!(
                    "e = {e}: q^2 = 1 makes q - q^-1 vanish"
                )));
            }
        }
        if let Some(s) = q_e_sign {
            if s != 1 && s != -1 {
                return Err(CoeffError::InvalidSpec(format!("qe = {s}")));
            }
            if e.is_none() {
                return Err(CoeffError::InvalidSpec("qe given with e = inf".into()));
            }
        }
        let mut q_e_sign = q_e_sign;
        if let Some(e) = e {
            let forced = if p == Some(2) {
                Some(1)
            } else if e % 2 == 0 {
                Some(-1)
            } else {
                None
            };
            if let Some(f) = forced {
                if q_e_sign.is_some_and(|s| s != f) {
                    return Err(CoeffError::InvalidSpec(format!(
                        "qe = {} contradicts e = {e}",
                        q_e_sign.unwrap()
                    )));
                }
                q_e_sign = Some(f);
            }
        }
        let r = match r {
            RForm::Power { sign, exp } => {
                if sign != 1 && sign != -1 {
                    return Err(CoeffError::InvalidSpec(format!("sign {sign}")));
                }
                let exp = match e {
                    Some(e) => exp.rem_euclid(2 * e as i32),
                    None => exp,
                };
                let sign = if p == Some(2) { 1 } else { sign };
                RForm::Power { sign, exp }
            }
            g => g,
        };
        Ok(SymbolicSpec { e, p, r, q_e_sign })
    }

    /// Value of `q^m`.
    pub fn q_pow(&self, m: i64) -> QPow {
        let v = match self.e {
            None => {
                if m == 0 {
                    QPow::One
                } else {
                    QPow::Other
                }
            }
            Some(e) => {
                let e = e as i64;
                if m.rem_euclid(e) != 0 {
                    QPow::Other
                } else if (m / e).rem_euclid(2) == 0 {
                    QPow::One
                } else {
                    match self.q_e_sign {
                        Some(1) => QPow::One,
                        Some(_) => QPow::MinusOne,
                        None => QPow::Unknown,
                    }
                }
            }
        };
        if self.p == Some(2) && v == QPow::MinusOne {
            QPow::One
        } else {
            v
        }
    }
}

impl ConcreteSpec {
    pub fn new(p: u64, q0: u64, r0: u64) -> Result<Self, CoeffError> {
        if !is_prime(p) {
            return Err(CoeffError::NotPrime(p));
        }
        let q0 = Fp::new(q0, p);
        let r0 = Fp::new(r0, p);
        if q0.is_zero() || r0.is_zero() {
            return Err(CoeffError::ZeroParameter);
        }
        if (q0 * q0).value() == 1 {
            return Err(CoeffError::OmegaNotInvertible);
        }
        Ok(ConcreteSpec { q0, r0 })
    }

    pub fn p(&self) -> u64 {
        self.q0.modulus()
    }

    /// Order of `q0^2`.
    pub fn e(&self) -> u32 {
        (self.q0 * self.q0).order().unwrap() as u32
    }

    /// `(sign, a)` with `r0 = sign * q0^a` and `0 <= a < e`, if any.
    pub fn r_as_power(&self) -> Option<(i8, i32)> {
        let e = self.e();
        let mut x = Fp::new(1, self.p());
        for a in 0..e {
            if x == self.r0 {
                return Some((1, a as i32));
            }
            if -x == self.r0 {
                return Some((-1, a as i32));
            }
            x = x * self.q0;
        }
        None
    }

    pub fn to_symbolic(&self) -> SymbolicSpec {
        let e = self.e();
        let qe = self.q0.pow(e as u64);
        let q_e_sign = if qe.value() == 1 { 1 } else { -1 };
        let r = match self.r_as_power() {
            Some((sign, exp)) => RForm::Power { sign, exp },
            None => RForm::Generic,
        };
        SymbolicSpec::new(Some(e), Some(self.p()), r, Some(q_e_sign)).unwrap()
    }
}

impl ParamSpec {
    pub fn parse(s: &str) -> Result<Self, CoeffError> {
        s.parse()
    }

    pub fn concrete(p: u64, q0: u64, r0: u64) -> Result<Self, CoeffError> {
        ConcreteSpec::new(p, q0, r0).map(ParamSpec::Concrete)
    }

    /// Order of `q^2`, `None` for infinity.
    pub fn e(&self) -> Option<u32> {
        match self {
            ParamSpec::Symbolic(s) => s.e,
            ParamSpec::Concrete(c) => Some(c.e()),
        }
    }

    /// Characteristic, `None` for zero.
    pub fn p(&self) -> Option<u64> {
        match self {
            ParamSpec::Symbolic(s) => s.p,
            ParamSpec::Concrete(c) => Some(c.p()),
        }
    }

    pub fn as_concrete(&self) -> Option<&ConcreteSpec> {
        match self {
            ParamSpec::Concrete(c) => Some(c),
            _ => None,
        }
    }

    /// Symbolic description; concrete specs are summarized exactly.
    pub fn symbolic(&self) -> SymbolicSpec {
        match self {
            ParamSpec::Symbolic(s) => *s,
            ParamSpec::Concrete(c) => c.to_symbolic(),
        }
    }

    pub fn q_pow(&self, m: i64) -> QPow {
        match self {
            ParamSpec::Symbolic(s) => s.q_pow(m),
            ParamSpec::Concrete(c) => {
                let v = c.q0.pow_i(m);
                if v.value() == 1 {
                    QPow::One
                } else if (-v).value() == 1 {
                    QPow::MinusOne
                } else {
                    QPow::Other
                }
            }
        }
    }

    /// Decide `q^m = 1` or `q^m = -1`.
    pub fn eval_sign_condition(&self, m: i64, target: SignTarget) -> Tri {
        let char2 = self.p() == Some(2);
        match (self.q_pow(m), target) {
            (QPow::Unknown, _) => Tri::Unknown,
            (QPow::Other, _) => Tri::False,
            (QPow::One, SignTarget::One) => Tri::True,
            (QPow::One, SignTarget::MinusOne) => Tri::from_bool(char2),
            (QPow::MinusOne, SignTarget::MinusOne) => Tri::True,
            (QPow::MinusOne, SignTarget::One) => Tri::from_bool(char2),
        }
    }

    /// Decide `r = sign * q^a`.
    pub fn r_equals(&self, sign: i8, a: i32) -> Tri {
        match self {
            ParamSpec::Concrete(c) => {
                let v = c.q0.pow_i(a as i64);
                let v = if sign < 0 { -v } else { v };
                Tri::from_bool(v == c.r0)
            }
            ParamSpec::Symbolic(s) => match s.r {
                RForm::Generic => Tri::False,
                RForm::Power { sign: rs, exp } => {
                    let t = if rs * sign > 0 {
                        SignTarget::One
                    } else {
                        SignTarget::MinusOne
                    };
                    self.eval_sign_condition(exp as i64 - a as i64, t)
                }
            },
        }
    }

    /// Decide `r ∈ {q^-1, -q}`.
    pub fn r_is_special(&self) -> Tri {
        self.r_equals(1, -1).or(self.r_equals(-1, 1))
    }

    /// Decide whether `r = ±q^a` for some integer `a`.
    pub fn r_is_signed_q_power(&self) -> Tri {
        match self {
            ParamSpec::Concrete(c) => Tri::from_bool(c.r_as_power().is_some()),
            ParamSpec::Symbolic(s) => Tri::from_bool(matches!(s.r, RForm::Power { .. })),
        }
    }

    /// `r = sign * q^a` normalized to `0 <= a < e`; `None` when `r` is not such a power
    /// or the normalization depends on an unknown sign.
    pub fn r_normalized_power(&self) -> Option<(i8, i32)> {
        match self {
            ParamSpec::Concrete(c) => c.r_as_power(),
            ParamSpec::Symbolic(s) => {
                let RForm::Power { sign, exp } = s.r else {
                    return None;
                };
                let Some(e) = s.e else {
                    return Some((sign, exp));
                };
                let e = e as i32;
                let k = exp.div_euclid(e);
                let a = exp.rem_euclid(e);
                if k % 2 == 0 {
                    return Some((sign, a));
                }
                match s.q_e_sign {
                    Some(1) => Some((sign, a)),
                    Some(_) => Some((if s.p == Some(2) { 1 } else { -sign }, a)),
                    None => None,
                }
            }
        }
    }

    /// Evaluate a `q`-only Laurent polynomial for zero-ness, when decidable.
    pub fn lp_is_zero(&self, x: &LaurentPoly) -> Tri {
        match self {
            ParamSpec::Concrete(c) => match x.specialize(c.q0, c.r0) {
                Ok(v) => Tri::from_bool(v.is_zero()),
                Err(_) => Tri::Unknown,
            },
            ParamSpec::Symbolic(_) => Tri::Unknown,
        }
    }
}

impl fmt::Display for RForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RForm::Generic => write!(f, "generic"),
            RForm::Power { sign, exp } => {
                let s = if sign < 0 { "-" } else { "" };
                match exp {
                    0 => write!(f, "{s}1"),
                    1 => write!(f, "{s}q"),
                    a => write!(f, "{s}q^{a}"),
                }
            }
        }
    }
}

impl FromStr for RForm {
    type Err = CoeffError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "generic" {
            return Ok(RForm::Generic);
        }
        let (sign, rest) = match t.strip_prefix('-') {
            Some(r) => (-1, r.trim()),
            None => (1, t.strip_prefix('+').unwrap_or(t).trim()),
        };
        if rest == "1" {
            return Ok(RForm::Power { sign, exp: 0 });
        }
        let Some(after_q) = rest.strip_prefix('q') else {
            return Err(CoeffError::Parse(format!("bad r-form {s:?}")));
        };
        let exp = if after_q.is_empty() {
            1
        } else {
            let e = after_q
                .strip_prefix('^')
                .ok_or_else(|| CoeffError::Parse(format!("bad r-form {s:?}")))?;
            let e = e.trim_start_matches('(').trim_end_matches(')');
            e.parse::<i32>()
                .map_err(|_| CoeffError::Parse(format!("bad exponent in {s:?}")))?
        };
        Ok(RForm::Power { sign, exp })
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamSpec::Symbolic(s) => {
                write!(f, "r={}", s.r)?;
                match s.e {
                    Some(e) => write!(f, " e={e}")?,
                    None => write!(f, " e=inf")?,
                }
                write!(f, " p={}", s.p.unwrap_or(0))?;
                if let Some(sg) = s.q_e_sign {
                    write!(f, " qe={}", if sg > 0 { "+1" } else { "-1" })?;
                }
                Ok(())
            }
            ParamSpec::Concrete(c) => write!(f, "p={} q0={} r0={}", c.p(), c.q0, c.r0),
        }
    }
}

impl FromStr for ParamSpec {
    type Err = CoeffError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut r = None;
        let mut e = None;
        let mut p = None;
        let mut qe = None;
        let mut q0 = None;
        let mut r0 = None;
        for tok in s.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| CoeffError::Parse(format!("expected key=value, got {tok:?}")))?;
            let bad = || CoeffError::Parse(format!("bad value in {tok:?}"));
            match k {
                "r" => r = Some(v.parse::<RForm>()?),
                "e" => {
                    e = Some(match v {
                        "inf" | "oo" | "infinity" => None,
                        _ => Some(v.parse::<u32>().map_err(|_| bad())?),
                    })
                }
                "p" => {
                    let x = v.parse::<u64>().map_err(|_| bad())?;
                    p = Some(if x == 0 { None } else { Some(x) });
                }
                "qe" => {
                    qe = Some(match v {
                        "+1" | "1" => 1,
                        "-1" => -1,
                        _ => return Err(bad()),
                    })
                }
                "q0" => q0 = Some(v.parse::<i64>().map_err(|_| bad())?),
                "r0" => r0 = Some(v.parse::<i64>().map_err(|_| bad())?),
                _ => return Err(CoeffError::Parse(format!("unknown key {k:?}"))),
            }
        }
        if q0.is_some() || r0.is_some() {
            let (Some(q0), Some(r0), Some(Some(p))) = (q0, r0, p) else {
                return Err(CoeffError::InvalidSpec(
                    "concrete spec needs p (prime), q0 and r0".into(),
                ));
            };
            if r.is_some() || e.is_some() || qe.is_some() {
                return Err(CoeffError::InvalidSpec(
                    "concrete spec cannot also give r, e or qe".into(),
                ));
            }
            let pi = p as i64;
            return ParamSpec::concrete(p, q0.rem_euclid(pi) as u64, r0.rem_euclid(pi) as u64);
        }
        let spec = SymbolicSpec::new(
            e.unwrap_or(None),
            p.unwrap_or(None),
            r.unwrap_or(RForm::Generic),
            qe,
        )?;
        Ok(ParamSpec::Symbolic(spec))
    }
}
