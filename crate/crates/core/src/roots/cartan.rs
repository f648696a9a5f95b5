//! Reduced root systems generated from the Gram matrix of a simple system.

use std::collections::HashSet;

use crate::error::{CkfError, Result};
use crate::exact::{frac, q, Rational};

/// Gram matrix of the simple roots of a reduced irreducible type, Bourbaki
/// numbering (`"A3"`, `"B2"`, `"E6"`, `"F4"`, `"G2"`, ...).
pub fn gram_matrix(type_name: &str) -> Result<Vec<Vec<Rational>>> {
    let bad = || CkfError::InvalidRootData(format!("unknown Cartan type {type_name}"));
    let (family, n) = type_name.split_at(1);
    let n: usize = n.parse().map_err(|_| bad())?;
    let mut g = vec![vec![q(0); n]; n];
    let link = |g: &mut Vec<Vec<Rational>>, i: usize, j: usize, v: Rational| {
        g[i][j] = v.clone();
        g[j][i] = v;
    };
    match family {
        "A" if n >= 1 => {
            for i in 0..n {
                g[i][i] = q(2);
                if i + 1 < n {
                    link(&mut g, i, i + 1, q(-1));
                }
            }
        }
        // long roots of length² 2, short of length² 1
        "B" if n >= 2 => {
            for i in 0..n {
                g[i][i] = q(2);
                if i + 1 < n {
                    link(&mut g, i, i + 1, q(-1));
                }
            }
            g[n - 1][n - 1] = q(1);
        }
        // short roots of length² 1, long of length² 2
        "C" if n >= 2 => {
            for i in 0..n {
                g[i][i] = q(1);
                if i + 1 < n {
                    link(&mut g, i, i + 1, frac(-1, 2));
                }
            }
            g[n - 1][n - 1] = q(2);
            link(&mut g, n - 2, n - 1, q(-1));
        }
        "D" if n >= 3 => {
            for i in 0..n {
                g[i][i] = q(2);
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, q(-1));
            }
            link(&mut g, n - 3, n - 1, q(-1));
        }
        "E" if (6..=8).contains(&n) => {
            for i in 0..n {
                g[i][i] = q(2);
            }
            // Bourbaki: 1-3, 3-4, 4-5, 5-6, ..., and 2-4
            link(&mut g, 0, 2, q(-1));
            link(&mut g, 1, 3, q(-1));
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, q(-1));
            }
        }
        "F" if n == 4 => {
            g[0][0] = q(2);
            g[1][1] = q(2);
            g[2][2] = q(1);
            g[3][3] = q(1);
            link(&mut g, 0, 1, q(-1));
            link(&mut g, 1, 2, q(-1));
            link(&mut g, 2, 3, frac(-1, 2));
        }
        "G" if n == 2 => {
            // α1 short, α2 long
            g[0][0] = q(2);
            g[1][1] = q(6);
            link(&mut g, 0, 1, q(-3));
        }
        _ => return Err(bad()),
    }
    Ok(g)
}

/// Positive roots as coefficient vectors over the simple system, sorted by
/// height then lexicographically.
pub fn positive_roots(gram: &[Vec<Rational>]) -> Vec<Vec<i64>> {
    let n = gram.len();
    let pairing = |beta: &[i64], i: usize| -> i64 {
        let ip: Rational = (0..n).map(|j| q(beta[j]) * &gram[j][i]).sum();
        let v = q(2) * ip / &gram[i][i];
        assert!(v.is_integer(), "non-integral Cartan pairing");
        i64::try_from(v.to_integer()).expect("small pairing")
    };
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    for r in &layer {
        seen.insert(r.clone());
    }
    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if seen.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q_len = p - pairing(beta, i);
                if q_len > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        next.sort();
        layer = next;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        for (t, count) in [
            ("A1", 1),
            ("A3", 6),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            assert_eq!(positive_roots(&gram_matrix(t).unwrap()).len(), count, "{t}");
        }
    }

    #[test]
    fn highest_roots() {
        let e8 = positive_roots(&gram_matrix("E8").unwrap());
        assert_eq!(e8.last().unwrap(), &vec![2, 3, 4, 6, 5, 4, 3, 2]);
        let g2 = positive_roots(&gram_matrix("G2").unwrap());
        assert_eq!(g2.last().unwrap(), &vec![3, 2]);
    }
}
