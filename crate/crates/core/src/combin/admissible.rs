//! Admissible partitions and the `r`-values they force.

use std::collections::BTreeSet;

use crate::coeff::{ParamSpec, Tri};

use super::partition::{partitions, Partition};
use super::CombinError;

type Node = (u32, u32);

fn diag(p: Node) -> i32 {
    p.1 as i32 - p.0 as i32
}

/// All perfect matchings of `nodes` (given as indices).
fn matchings(k: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        free: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free.remove(idx);
            cur.push((a, b));
            rec(free, cur, out);
            cur.pop();
            free.insert(idx, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    rec(&mut (0..k).collect(), &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Domino {
    /// `{p, p^-}` with `p` the upper node.
    Vertical(Node),
    /// `{p, p^+}` with `p` the left node.
    Horizontal(Node),
    Other,
}

fn domino(a: Node, b: Node) -> Domino {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    if a.1 == b.1 && b.0 == a.0 + 1 {
        Domino::Vertical(a)
    } else if a.0 == b.0 && b.1 == a.1 + 1 {
        Domino::Horizontal(a)
    } else {
        Domino::Other
    }
}

/// Every maximal staircase chain (each anchor one row below and one column
/// left of the previous) among `anchors` has even length.
fn chains_even(anchors: &[Node]) -> bool {
    let set: BTreeSet<Node> = anchors.iter().copied().collect();
    for &a in &set {
        // chains run south-west; start where there is no predecessor
        if a.0 > 1 && set.contains(&(a.0 - 1, a.1 + 1)) {
            continue;
        }
        let mut len = 0;
        let mut cur = a;
        while set.contains(&cur) {
            len += 1;
            if cur.1 == 1 {
                break;
            }
            cur = (cur.0 + 1, cur.1 - 1);
        }
        if len % 2 == 1 {
            return false;
        }
    }
    true
}

/// Is `lambda` `(f, mu)`-admissible under `spec`? Three-valued when the spec
/// cannot decide a content identity.
pub fn admissibility(
    lambda: &Partition,
    mu: &Partition,
    f: u32,
    spec: &ParamSpec,
) -> Result<Tri, CombinError> {
    if lambda.size() != mu.size() + 2 * f {
        return Err(CombinError::SizeMismatch {
            big: lambda.clone(),
            small: mu.clone(),
            f,
        });
    }
    if !lambda.contains(mu) {
        return Ok(Tri::False);
    }
    let nodes = lambda.skew_nodes(mu);
    let mut result = Tri::False;
    for m in matchings(nodes.len()) {
        let mut ok = Tri::True;
        let mut vert = Vec::new();
        let mut horiz = Vec::new();
        let mut undecided = false;
        for &(x, y) in &m {
            let (a, b) = (nodes[x], nodes[y]);
            // c(a)c(b) = r^2 q^{2(d_a + d_b)} = 1  <=>  r = ±q^{-(d_a + d_b)}
            let s = -(diag(a) + diag(b));
            ok = ok.and(spec.r_equals(1, s).or(spec.r_equals(-1, s)));
            if ok == Tri::False {
                break;
            }
            match domino(a, b) {
                // c(p) = q  <=>  r = q^{1 - 2 d_p}
                Domino::Vertical(p) => match spec.r_equals(1, 1 - 2 * diag(p)) {
                    Tri::True => vert.push(p),
                    Tri::False => {}
                    Tri::Unknown => undecided = true,
                },
                // c(p) = -q^{-1}  <=>  r = -q^{-1 - 2 d_p}
                Domino::Horizontal(p) => match spec.r_equals(-1, -1 - 2 * diag(p)) {
                    Tri::True => horiz.push(p),
                    Tri::False => {}
                    Tri::Unknown => undecided = true,
                },
                Domino::Other => {}
            }
        }
        if ok == Tri::False {
            continue;
        }
        let shape_ok = if undecided {
            Tri::Unknown
        } else {
            Tri::from_bool(chains_even(&vert) && chains_even(&horiz))
        };
        result = result.or(ok.and(shape_ok));
        if result == Tri::True {
            break;
        }
    }
    Ok(result)
}

/// Boolean form of [`admissibility`]; an undecidable spec is an error.
pub fn is_admissible(
    lambda: &Partition,
    mu: &Partition,
    f: u32,
    spec: &ParamSpec,
) -> Result<bool, CombinError> {
    admissibility(lambda, mu, f, spec)?
        .known()
        .ok_or(CombinError::Undecidable)
}

/// The values `r = sign·q^a` (with `q` not a root of unity) for which `big` is
/// `((|big| - |small|)/2, small)`-admissible.
pub fn forced_r_values(big: &Partition, small: &Partition) -> BTreeSet<(i8, i32)> {
    let mut out = BTreeSet::new();
    if !big.contains(small) || (big.size() - small.size()) % 2 == 1 {
        return out;
    }
    let nodes = big.skew_nodes(small);
    'm: for m in matchings(nodes.len()) {
        let mut a_val: Option<i32> = None;
        for &(x, y) in &m {
            let s = -(diag(nodes[x]) + diag(nodes[y]));
            match a_val {
                None => a_val = Some(s),
                Some(t) if t != s => continue 'm,
                _ => {}
            }
        }
        let Some(a) = a_val else { continue };
        for sign in [1i8, -1] {
            let mut vert = Vec::new();
            let mut horiz = Vec::new();
            for &(x, y) in &m {
                match domino(nodes[x], nodes[y]) {
                    Domino::Vertical(p) if sign == 1 && a + 2 * diag(p) == 1 => vert.push(p),
                    Domino::Horizontal(p) if sign == -1 && a + 2 * diag(p) == -1 => horiz.push(p),
                    _ => {}
                }
            }
            if chains_even(&vert) && chains_even(&horiz) {
                out.insert((sign, a));
            }
        }
    }
    out
}

/// Values `r = ±q^a` excluded by the first condition of the Gram nonvanishing
/// criterion for the cell `(f, λ)` of `B_n`.
pub fn forbidden_r_values(f: u32, lambda: &Partition, n: u32) -> BTreeSet<(i8, i32)> {
    let mut out = BTreeSet::new();
    for l in 0..f {
        for nu in partitions(n - 2 * l) {
            if nu.contains(lambda) {
                out.extend(forced_r_values(&nu, lambda));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn sp(s: &str) -> ParamSpec {
        s.parse().unwrap()
    }

    #[test]
    fn admissible_examples() {
        let e = Partition::empty();
        assert!(is_admissible(&pt("(2)"), &e, 1, &sp("r=q^-1")).unwrap());
        assert!(!is_admissible(&pt("(2)"), &e, 1, &sp("r=-q^-1")).unwrap());
        assert!(is_admissible(&pt("(1,1)"), &e, 1, &sp("r=-q")).unwrap());
        assert!(!is_admissible(&pt("(1,1)"), &e, 1, &sp("r=q")).unwrap());
        assert!(is_admissible(&pt("(2)"), &e, 2, &sp("r=q")).is_err());
    }

    #[test]
    fn forbidden_examples() {
        let e = Partition::empty();
        assert_eq!(
            forbidden_r_values(1, &e, 2),
            [(1, -1), (-1, 1)].into_iter().collect()
        );
        let s = forbidden_r_values(1, &pt("(1)"), 3);
        assert_eq!(s, [(1, -3), (-1, 3), (1, 0), (-1, 0)].into_iter().collect());
        assert!(forbidden_r_values(0, &pt("(2)"), 2).is_empty());
    }

    #[test]
    fn admissible_agrees_with_forced_values() {
        for m in 0..=4u32 {
            for small in partitions(m) {
                for k in 1..=2u32 {
                    for big in partitions(m + 2 * k) {
                        let forced = forced_r_values(&big, &small);
                        for a in -8..=8 {
                            for sign in [1i8, -1] {
                                let s = ParamSpec::Symbolic(
                                    crate::coeff::SymbolicSpec::new(
                                        None,
                                        None,
                                        crate::coeff::RForm::Power { sign, exp: a },
                                        None,
                                    )
                                    .unwrap(),
                                );
                                let adm = is_admissible(&big, &small, k, &s).unwrap();
                                assert_eq!(
                                    adm,
                                    forced.contains(&(sign, a)),
                                    "{big} / {small} at {s}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}
