use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::perm::{Perm, ReducedWord};

/// A standard tableau; `rows[i][j]` holds an entry in `1..=|λ|`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    /// `t^λ`: entries filled along rows.
    pub fn initial(shape: &Partition) -> Self {
        let mut rows = Vec::new();
        let mut k = 1;
        for &l in shape.parts() {
            rows.push((k..k + l).collect());
            k += l;
        }
        StandardTableau {
            shape: shape.clone(),
            rows,
        }
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Option<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len() as u32).collect()).ok()?;
        let t = StandardTableau { shape, rows };
        t.is_standard().then_some(t)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn is_standard(&self) -> bool {
        let m = self.shape.size();
        let mut seen = vec![false; m as usize + 1];
        for r in &self.rows {
            for &x in r {
                if x == 0 || x > m || seen[x as usize] {
                    return false;
                }
                seen[x as usize] = true;
            }
        }
        for (i, r) in self.rows.iter().enumerate() {
            if r.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            if i > 0 {
                for (j, &x) in r.iter().enumerate() {
                    if self.rows[i - 1][j] >= x {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `t·w`: replace every entry `k` by `k·w`.
    pub fn act(&self, w: &Perm) -> StandardTableau {
        StandardTableau {
            shape: self.shape.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&k| w.act(k as usize - 1) as u32 + 1)
                        .collect()
                })
                .collect(),
        }
    }

    /// The permutation `d(t)` with `t^λ · d(t) = t`, as a reduced word.
    pub fn d(&self) -> ReducedWord {
        let m = self.shape.size() as usize;
        let mut img = vec![0u8; m];
        let mut k = 0;
        for r in &self.rows {
            for &x in r {
                img[k] = (x - 1) as u8;
                k += 1;
            }
        }
        ReducedWord::from_perm(Perm::from_images(img).unwrap())
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// All standard tableaux of shape λ; the first one is `t^λ`.
pub fn std_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    let m = shape.size();
    let nrows = shape.len();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); nrows];
    let mut out = Vec::new();
    fn rec(
        k: u32,
        m: u32,
        shape: &Partition,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<StandardTableau>,
    ) {
        if k > m {
            out.push(StandardTableau {
                shape: shape.clone(),
                rows: rows.clone(),
            });
            return;
        }
        for i in 0..rows.len() {
            let len = rows[i].len();
            let fits = (len as u32) < shape.part(i) && (i == 0 || rows[i - 1].len() > len);
            if fits {
                rows[i].push(k);
                rec(k + 1, m, shape, rows, out);
                rows[i].pop();
            }
        }
    }
    rec(1, m, shape, &mut rows, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::partitions;

    #[test]
    fn counts_match_hook_formula() {
        for m in 0..=7 {
            for l in partitions(m) {
                let ts = std_tableaux(&l);
                assert_eq!(ts.len() as u128, l.hook_count(), "{l}");
                assert_eq!(ts[0], StandardTableau::initial(&l));
            }
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(std_tableaux(&"(2,1)".parse().unwrap()).len(), 2);
        assert_eq!(std_tableaux(&"(3)".parse().unwrap()).len(), 1);
        assert_eq!(std_tableaux(&"(2,2)".parse().unwrap()).len(), 2);
    }

    #[test]
    fn d_of_examples() {
        let t = StandardTableau::from_rows(vec![vec![1, 3], vec![2]]).unwrap();
        assert_eq!(t.d().letters(), &[2]);
        let l: Partition = "(3,1)".parse().unwrap();
        assert!(StandardTableau::initial(&l).d().is_empty());
    }

    #[test]
    fn d_roundtrip() {
        for m in 0..=5 {
            for l in partitions(m) {
                let t0 = StandardTableau::initial(&l);
                for t in std_tableaux(&l) {
                    let d = t.d();
                    assert_eq!(t0.act(d.perm()), t);
                    assert_eq!(d.len(), d.perm().length());
                }
            }
        }
    }
}
