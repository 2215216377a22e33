//! Independent character oracle: weight multiplicities of the
//! highest-weight module of the dual root system, by the Freudenthal
//! recursion. Used to cross-check the alternating-sum character ratio.

use crate::cover::CoverDatum;
use crate::exactlin::{Int, IntMatrix, Rat};
use num::{Signed, Zero};
use std::collections::BTreeMap;

/// Weight multiplicities of the irreducible module of the dual root system
/// (roots = modified coroots n_alpha alpha^vee) with highest weight y.
/// y must be dominant and lie in Y_{Q,n}.
pub fn weight_multiplicities(cover: &CoverDatum, y: &[Int]) -> BTreeMap<Vec<Int>, Int> {
    let d = &cover.datum;
    // positive roots of the dual system
    let pos: Vec<Vec<Int>> = d
        .positive_pairs()
        .iter()
        .map(|p| {
            let na = Int::from(cover.n_alpha(&p.coroot));
            p.coroot.iter().map(|c| c * &na).collect()
        })
        .collect();
    let simple: Vec<Vec<Int>> = (0..d.num_simple())
        .map(|i| {
            let na = Int::from(cover.n_alpha_simple(i));
            d.simple_coroot(i).iter().map(|c| c * &na).collect::<Vec<Int>>()
        })
        .collect();
    // W-invariant form F(u, v) = sum over positive roots alpha of
    // <u, alpha><v, alpha>
    let dim = d.dim;
    let mut fm = IntMatrix::zero(dim, dim);
    for p in d.positive_pairs() {
        for i in 0..dim {
            for j in 0..dim {
                let add = &p.root[i] * &p.root[j];
                fm[(i, j)] += add;
            }
        }
    }
    let form_ii = |u: &[Rat], v: &[Rat]| -> Rat {
        let mut s = Rat::zero();
        for i in 0..dim {
            for j in 0..dim {
                if fm[(i, j)].is_zero() {
                    continue;
                }
                s += &u[i] * &v[j] * Rat::from(fm[(i, j)].clone());
            }
        }
        s
    };
    let to_rat = |v: &[Int]| -> Vec<Rat> { v.iter().map(|x| Rat::from(x.clone())).collect() };
    // rho of the dual system
    let mut rho = vec![Rat::zero(); dim];
    for p in &pos {
        for k in 0..dim {
            rho[k] += Rat::new(p[k].clone(), Int::from(2));
        }
    }
    let plus_rho = |v: &[Int]| -> Vec<Rat> {
        v.iter().zip(&rho).map(|(a, b)| Rat::from(a.clone()) + b).collect()
    };
    let top_norm = {
        let yr = plus_rho(y);
        form_ii(&yr, &yr)
    };

    // candidate weights: BFS downward by simple dual roots, pruned by the
    // norm bound |mu + rho| <= |y + rho|
    let mut level: BTreeMap<Vec<Int>, usize> = BTreeMap::new();
    level.insert(y.to_vec(), 0);
    let mut frontier = vec![y.to_vec()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for mu in &frontier {
            let l = level[mu];
            for s in &simple {
                let cand: Vec<Int> = mu.iter().zip(s).map(|(a, b)| a - b).collect();
                if level.contains_key(&cand) {
                    continue;
                }
                let cr = plus_rho(&cand);
                if form_ii(&cr, &cr) > top_norm {
                    continue;
                }
                level.insert(cand.clone(), l + 1);
                next.push(cand);
            }
        }
        frontier = next;
    }
    // Freudenthal recursion by increasing level
    let mut by_level: Vec<Vec<Vec<Int>>> = Vec::new();
    for (mu, l) in &level {
        while by_level.len() <= *l {
            by_level.push(Vec::new());
        }
        by_level[*l].push(mu.clone());
    }
    let mut mult: BTreeMap<Vec<Int>, Int> = BTreeMap::new();
    mult.insert(y.to_vec(), Int::from(1));
    for l in 1..by_level.len() {
        for mu in &by_level[l] {
            let mur = plus_rho(mu);
            let denom = &top_norm - form_ii(&mur, &mur);
            if denom.is_zero() {
                // mu is in the W-orbit of y; multiplicity handled by the
                // recursion only when denom > 0, orbit points get m = 1
                // exactly when they are conjugate to y. Detect via the
                // recursion failing: fall back to orbit membership.
                let m = if is_in_orbit(cover, y, mu) { Int::from(1) } else { Int::zero() };
                if !m.is_zero() {
                    mult.insert(mu.clone(), m);
                }
                continue;
            }
            let mut total = Rat::zero();
            for beta in &pos {
                let mut k = 1i64;
                loop {
                    let up: Vec<Int> = mu
                        .iter()
                        .zip(beta)
                        .map(|(a, b)| a + b * Int::from(k))
                        .collect();
                    let upr = plus_rho(&up);
                    if form_ii(&upr, &upr) > top_norm {
                        break;
                    }
                    if let Some(m) = mult.get(&up) {
                        let val = form_ii(&to_rat(&up), &to_rat(beta));
                        total += Rat::from(m.clone()) * val;
                    }
                    k += 1;
                }
            }
            let m = Rat::from(Int::from(2)) * total / denom;
            assert!(m.is_integer(), "Freudenthal multiplicity must be integral");
            let m = m.to_integer();
            assert!(!m.is_negative());
            if !m.is_zero() {
                mult.insert(mu.clone(), m);
            }
        }
    }
    mult
}

/// Is mu in the Weyl orbit of y (both under the untwisted linear action)?
fn is_in_orbit(cover: &CoverDatum, y: &[Int], mu: &[Int]) -> bool {
    // BFS over the orbit of y (small for our instances)
    let d = &cover.datum;
    let refl: Vec<IntMatrix> = (0..d.num_simple()).map(|i| d.reflection_matrix(i)).collect();
    let mut seen = vec![y.to_vec()];
    let mut frontier = vec![y.to_vec()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for w in &refl {
                let img = w.mul_vec(v);
                if !seen.contains(&img) {
                    if img == mu {
                        return true;
                    }
                    seen.push(img.clone());
                    next.push(img);
                }
            }
        }
        frontier = next;
    }
    seen.contains(&mu.to_vec())
}

/// Dimension of the module (sum of multiplicities), for sanity checks.
pub fn dimension(cover: &CoverDatum, y: &[Int]) -> Int {
    weight_multiplicities(cover, y).values().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{standard_bisector, CoverDatum};
    use crate::exactlin::int;
    use crate::rootdata::{build_root_datum, Family, RootLabel};

    fn sl2(n: u64) -> CoverDatum {
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::A, rank: 1 }).unwrap();
        let b = standard_bisector(&d, 1);
        CoverDatum::new(d, b, n).unwrap()
    }

    #[test]
    fn sl2_dual_modules() {
        // n = 3: dual roots {3 alpha}; highest weight 3 alpha gives the
        // 3-dimensional module with weights {3, 0, -3} alpha
        let c = sl2(3);
        let m = weight_multiplicities(&c, &[int(3)]);
        assert_eq!(m.len(), 3);
        assert_eq!(m[&vec![int(3)]], int(1));
        assert_eq!(m[&vec![int(0)]], int(1));
        assert_eq!(m[&vec![int(-3)]], int(1));
        // highest weight 6 alpha = 4 * (fundamental 3/2 alpha): the
        // 5-dimensional module, weights {6, 3, 0, -3, -6} alpha
        let m2 = weight_multiplicities(&c, &[int(6)]);
        assert_eq!(m2.len(), 5);
        assert!(m2.values().all(|v| *v == int(1)));
    }

    #[test]
    fn sp4_dual_vector_module() {
        // C2 at n = 1: the dual-root system is the coroot system of C2
        // (type B2). Highest weight alpha_1^vee + alpha_2^vee = e_1 is the
        // 5-dimensional vector module; the sum of both simple dual roots
        // doubled in the long direction gives the 10-dim adjoint one.
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::C, rank: 2 }).unwrap();
        let b = standard_bisector(&d, 1);
        let c = CoverDatum::new(d, b, 1).unwrap();
        let y = vec![int(1), int(1)]; // e_1 in coroot coordinates
        for i in 0..2 {
            assert!(c.datum.pair_simple(i, &y) >= int(0));
        }
        assert_eq!(dimension(&c, &y), int(5));
        // adjoint of SO5: highest weight e_1 + e_2 = alpha_1 + 2 alpha_2
        let adj = vec![int(1), int(2)];
        assert_eq!(dimension(&c, &adj), int(10));
    }
}
