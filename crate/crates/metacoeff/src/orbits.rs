//! The finite space Y / Y_{Q,n} with its twisted Weyl action, coset
//! classification, the counts d, b_alpha, a_alpha, b_{W,n}, exceptional
//! points, and permutation signs.

use crate::cover::CoverDatum;
use crate::exactlin::{
    affine_congruence_solve, int, AffineLattice, Congruence, CongruenceSolution, Int, IntMatrix,
    QuotientStructure, Rat,
};
use crate::rootdata::WeylElement;
use num::{Integer, One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum OrbitError {
    #[error("enumeration cap exceeded: d = {0}")]
    CapExceeded(Int),
}

/// The coset space Y / Y_{Q,n} with canonical representatives.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub cover: CoverDatum,
    pub d: Int,
    /// explicit representatives, present only when d <= the enumeration cap
    pub reps: Option<Vec<Vec<Int>>>,
}

pub const DEFAULT_ENUM_CAP: u64 = 50_000;

/// Build the coset space; representatives are materialized iff d <= cap.
pub fn coset_space(cover: &CoverDatum, enumerate_cap: u64) -> CosetSpace {
    let d = cover.index();
    let reps = if d <= Int::from(enumerate_cap) {
        Some(cover.quotient.enumerate_reps().expect("finite index"))
    } else {
        None
    };
    CosetSpace { cover: cover.clone(), d, reps }
}

impl CosetSpace {
    pub fn quotient(&self) -> &QuotientStructure {
        &self.cover.quotient
    }

    /// Canonical representative of the coset of y.
    pub fn rep(&self, y: &[Int]) -> Vec<Int> {
        self.quotient().rep_map(y)
    }

    /// Twisted action w[y] = w(y - rho) + rho, mapped to the canonical
    /// representative. Asserts integrality of w[y].
    pub fn twisted_act(&self, w: &IntMatrix, y: &[Int]) -> Vec<Int> {
        let t = twisted_point(&self.cover, w, y);
        self.rep(&t)
    }
}

/// w[y] = w(y - rho) + rho as an exact integer vector.
pub fn twisted_point(cover: &CoverDatum, w: &IntMatrix, y: &[Int]) -> Vec<Int> {
    let rho = cover.datum.rho();
    let shifted: Vec<Rat> = y
        .iter()
        .zip(rho)
        .map(|(a, b)| Rat::from(a.clone()) - b)
        .collect();
    let moved = w.mul_rat_vec(&shifted);
    moved
        .iter()
        .zip(rho)
        .map(|(a, b)| {
            let v = a + b;
            assert!(v.is_integer(), "twisted action left Y");
            v.to_integer()
        })
        .collect()
}

/// Classification of a coset for a simple root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetClass {
    Free { pairing: i64, n_alpha: u64 },
    Normal { pairing: i64, n_alpha: u64 },
    Special { pairing: i64, n_alpha: u64 },
}

/// Classify the coset of y for alpha_i: free iff the twisted reflection
/// moves the coset (m'_alpha does not divide <y - rho, alpha>); among fixed
/// cosets, normal iff n_alpha divides <y - rho, alpha>, else special.
pub fn classify(cover: &CoverDatum, i: usize, y: &[Int]) -> CosetClass {
    let pairing_rho = pairing_with_rho(cover, i, y);
    let na = cover.n_alpha_simple(i);
    let mp = cover.m_prime(i) as i64;
    let p = i64::try_from(pairing_rho.clone()).expect("pairing fits i64");
    if p.rem_euclid(mp) != 0 {
        CosetClass::Free { pairing: p, n_alpha: na }
    } else if p.rem_euclid(na as i64) == 0 {
        CosetClass::Normal { pairing: p, n_alpha: na }
    } else {
        CosetClass::Special { pairing: p, n_alpha: na }
    }
}

/// <y - rho, alpha_i>, an exact integer for y in Y.
pub fn pairing_with_rho(cover: &CoverDatum, i: usize, y: &[Int]) -> Int {
    let v = cover.datum.pair_simple(i, y);
    // <rho, alpha_i> = 1
    v - Int::one()
}

/// (b_alpha, a_alpha): the number of twisted-fixed cosets for alpha_i and
/// the number of free orbit pairs. Computed by the congruence-lattice
/// method; cross-checked by enumeration when representatives are available.
pub fn alpha_counts(space: &CosetSpace, i: usize) -> (Int, Int) {
    let cover = &space.cover;
    let mp = cover.m_prime(i);
    let b = fixed_count_for_moduli(cover, &[(i, mp)]);
    let d = space.d.clone();
    let diff = &d - &b;
    let two: Int = int(2);
    let (a, r) = diff.div_rem(&two);
    assert!(r.is_zero(), "d - b_alpha must be even");
    if let Some(reps) = &space.reps {
        let w = cover.datum.reflection_matrix(i);
        let fixed = reps
            .iter()
            .filter(|y| &space.twisted_act(&w, y) == *y)
            .count();
        assert_eq!(Int::from(fixed), b, "congruence count disagrees with enumeration");
    }
    (b, a)
}

/// Count cosets satisfying m_i | <y - rho, alpha_i> for every listed
/// (index, modulus) pair: the index in Y/Y_{Q,n} of the solution lattice.
fn fixed_count_for_moduli(cover: &CoverDatum, moduli: &[(usize, u64)]) -> Int {
    let dim = cover.dim();
    let ambient = IntMatrix::identity(dim);
    let cons: Vec<Congruence> = moduli
        .iter()
        .map(|(i, m)| {
            Congruence::new(
                cover.datum.simple_root(*i),
                Rat::from(int(-1)), // offset: <y, alpha> - 1 = 0 mod m
                Int::from(*m),
            )
        })
        .collect();
    match affine_congruence_solve(&cons, &ambient) {
        CongruenceSolution::Empty { .. } => Int::zero(),
        CongruenceSolution::Lattice(l) => {
            let lat = l.0;
            // the solution set is base + M; Y_{Q,n} is contained in M, and
            // the number of cosets is [M : Y_{Q,n}]
            let q = QuotientStructure::new(&lat.basis, &cover.yqn_basis)
                .expect("Y_Qn inside the fixed-direction lattice");
            q.index_int().expect("finite")
        }
    }
}

/// b_{W,n} = number of cosets fixed by every twisted simple reflection.
pub fn fixed_count_bw(cover: &CoverDatum) -> Int {
    let moduli: Vec<(usize, u64)> = (0..cover.datum.num_simple())
        .map(|i| (i, cover.m_prime(i)))
        .collect();
    fixed_count_for_moduli(cover, &moduli)
}

/// Enumeration cross-check of b_{W,n} (for small spaces).
pub fn fixed_count_bw_enumerated(space: &CosetSpace) -> Option<Int> {
    let reps = space.reps.as_ref()?;
    let cover = &space.cover;
    let refl: Vec<IntMatrix> = (0..cover.datum.num_simple())
        .map(|i| cover.datum.reflection_matrix(i))
        .collect();
    let count = reps
        .iter()
        .filter(|y| refl.iter().all(|w| &space.twisted_act(w, y) == *y))
        .count();
    Some(Int::from(count))
}

/// The exceptional set: the solutions of the exact pairing equations of the
/// exceptional-point definition, with its coset-image count.
#[derive(Clone, Debug)]
pub struct ExceptionalSet {
    pub solution: Option<AffineLattice>,
    pub image_count: Int,
    /// per-simple-root targets used: -n_alpha (normal regime) or
    /// -n_alpha / 2 (special regime)
    pub targets: Vec<Int>,
}

/// Solve the exact equations <y - rho, alpha_i> = c_i over Y, where c_i is
/// -n_alpha_i in the normal regime and -n_alpha_i/2 in the special regime
/// for alpha_i.
pub fn exceptional_set(cover: &CoverDatum) -> ExceptionalSet {
    let dim = cover.dim();
    let nsimple = cover.datum.num_simple();
    let ambient = IntMatrix::identity(dim);
    let mut targets = Vec::with_capacity(nsimple);
    for i in 0..nsimple {
        let na = cover.n_alpha_simple(i) as i64;
        let c = if cover.special_possible(i) {
            assert_eq!(na % 2, 0);
            -na / 2
        } else {
            -na
        };
        targets.push(int(c));
    }
    // <y, alpha_i> - 1 - c_i = 0 (exact equation, modulus 0)
    let cons: Vec<Congruence> = (0..nsimple)
        .map(|i| {
            Congruence::new(
                cover.datum.simple_root(i),
                Rat::from(-Int::one() - &targets[i]),
                Int::zero(),
            )
        })
        .collect();
    match affine_congruence_solve(&cons, &ambient) {
        CongruenceSolution::Empty { .. } => {
            ExceptionalSet { solution: None, image_count: Int::zero(), targets }
        }
        CongruenceSolution::Lattice(l) => {
            let lat = l.0;
            // the image under Y -> Y/Y_{Q,n} has size [K : K cap Y_{Q,n}]
            // where K is the direction lattice
            let image_count = if lat.basis.cols == 0 {
                Int::one()
            } else {
                // K cap Y_{Q,n}: columns of K whose combos are in Y_{Q,n}
                let k = &lat.basis;
                // solve: K c in Y_{Q,n} <=> exists z: K c = Yqn z
                // lattice of such c: kernel of [K | -Yqn] projected
                let rows = k.rows;
                let mut a = IntMatrix::zero(rows, k.cols + cover.yqn_basis.cols);
                for i in 0..rows {
                    for j in 0..k.cols {
                        a[(i, j)] = k[(i, j)].clone();
                    }
                    for j in 0..cover.yqn_basis.cols {
                        a[(i, k.cols + j)] = -cover.yqn_basis[(i, j)].clone();
                    }
                }
                let ker = crate::exactlin::integer_kernel(&a);
                let mut cols = Vec::new();
                for j in 0..ker.cols {
                    let col: Vec<Int> = (0..k.cols).map(|i| ker[(i, j)].clone()).collect();
                    if col.iter().any(|x| !x.is_zero()) {
                        cols.push(col);
                    }
                }
                let sub = crate::exactlin::hermite_normal_form(&IntMatrix::from_cols(cols));
                let q = QuotientStructure::new(&IntMatrix::identity(k.cols), &sub)
                    .expect("sublattice of coefficient space");
                q.index_int().expect("K cap Y_Qn has finite index in K")
            };
            ExceptionalSet { solution: Some(lat), image_count, targets }
        }
    }
}

/// Sign of the permutation induced by the untwisted reflection
/// y -> w_alpha(y) on the coset space. Requires materialized reps.
pub fn perm_sign(space: &CosetSpace, i: usize) -> Result<i32, OrbitError> {
    let reps = space
        .reps
        .as_ref()
        .ok_or_else(|| OrbitError::CapExceeded(space.d.clone()))?;
    let w = space.cover.datum.reflection_matrix(i);
    permutation_sign_of_map(space, reps, |y| {
        let img = w.mul_vec(y);
        space.rep(&img)
    })
}

pub(crate) fn permutation_sign_of_map<F>(
    _space: &CosetSpace,
    reps: &[Vec<Int>],
    f: F,
) -> Result<i32, OrbitError>
where
    F: Fn(&[Int]) -> Vec<Int>,
{
    let index_of = |v: &Vec<Int>| reps.iter().position(|r| r == v).expect("rep missing");
    let perm: Vec<usize> = reps.iter().map(|y| index_of(&f(y))).collect();
    // sign from cycle decomposition
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i32;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    Ok(sign)
}

/// Apply the twisted action of a Weyl element to a coset representative.
pub fn twisted_act(space: &CosetSpace, w: &WeylElement, y: &[Int]) -> Vec<Int> {
    space.twisted_act(&w.matrix, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{kp_gl2_bisector, savin_bisector, standard_bisector, CoverDatum};
    use crate::rootdata::{build_root_datum, weyl_group, Family, RootLabel};

    fn sl2(n: u64) -> CoverDatum {
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::A, rank: 1 }).unwrap();
        let b = standard_bisector(&d, 1);
        CoverDatum::new(d, b, n).unwrap()
    }

    fn kp_gl2(n: u64, c: i64) -> CoverDatum {
        let d = build_root_datum(RootLabel::Gl { rank: 2 }).unwrap();
        CoverDatum::new(d, kp_gl2_bisector(c), n).unwrap()
    }

    fn sp4(n: u64) -> CoverDatum {
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::C, rank: 2 }).unwrap();
        let b = standard_bisector(&d, 1);
        CoverDatum::new(d, b, n).unwrap()
    }

    #[test]
    fn coset_space_sizes() {
        assert_eq!(coset_space(&sl2(3), 100).d, int(3));
        assert_eq!(coset_space(&kp_gl2(4, 0), 100).d, int(16));
        assert_eq!(coset_space(&sl2(1), 100).d, int(1));
    }

    #[test]
    fn twisted_action_sl2() {
        // w_alpha[k alpha] = (1 - k) alpha
        let c = sl2(5);
        let w = c.datum.reflection_matrix(0);
        for k in -4i64..=4 {
            let img = twisted_point(&c, &w, &[int(k)]);
            assert_eq!(img, vec![int(1 - k)]);
        }
    }

    #[test]
    fn twisted_action_gl2() {
        // w_alpha[(s, t)] = (t + 1, s - 1)
        let c = kp_gl2(3, 0);
        let w = c.datum.reflection_matrix(0);
        for s in -2i64..=2 {
            for t in -2i64..=2 {
                let img = twisted_point(&c, &w, &[int(s), int(t)]);
                assert_eq!(img, vec![int(t + 1), int(s - 1)]);
            }
        }
    }

    #[test]
    fn twisted_action_is_group_action() {
        for cover in [sp4(3), sp4(2), kp_gl2(2, 1)] {
            let space = coset_space(&cover, 1000);
            let reps = space.reps.clone().unwrap();
            let w = weyl_group(&cover.datum, 100).unwrap();
            for a in &w {
                for b in &w {
                    let ab = a.matrix.mul(&b.matrix);
                    for y in &reps {
                        let lhs = space.twisted_act(&ab, y);
                        let rhs = space.twisted_act(&a.matrix, &space.twisted_act(&b.matrix, y));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn classify_sl2_examples() {
        // SL2 n=3, y = -alpha: <y - rho, alpha> = -3, normal
        let c3 = sl2(3);
        assert!(matches!(classify(&c3, 0, &[int(-1)]), CosetClass::Normal { pairing: -3, .. }));
        // SL2 n=2, y = 0: special
        let c2 = sl2(2);
        assert!(matches!(classify(&c2, 0, &[int(0)]), CosetClass::Special { pairing: -1, .. }));
        // SL2 n=4, y = 0: free
        let c4 = sl2(4);
        assert!(matches!(classify(&c4, 0, &[int(0)]), CosetClass::Free { .. }));
    }

    #[test]
    fn alpha_counts_examples() {
        // GL2 (0,1): b = n, a = (n^2 - n)/2
        for n in 1..=5u64 {
            let space = coset_space(&kp_gl2(n, 0), 10_000);
            let (b, a) = alpha_counts(&space, 0);
            assert_eq!(b, int(n as i64));
            assert_eq!(a, int(((n * n - n) / 2) as i64));
        }
        // SL2: b = 1 if d odd else 0
        for n in 1..=8u64 {
            let space = coset_space(&sl2(n), 10_000);
            let (b, _) = alpha_counts(&space, 0);
            let d = n / n.gcd(&2);
            assert_eq!(b, int(if d % 2 == 1 { 1 } else { 0 }), "n={}", n);
        }
        // Savin GL_r: b_{alpha_i} = n_o^{r-1}
        for r in 2..=4usize {
            for n in 1..=4u64 {
                let d = build_root_datum(RootLabel::Gl { rank: r }).unwrap();
                let cover = CoverDatum::new(d, savin_bisector(r), n).unwrap();
                let space = coset_space(&cover, 50_000);
                let no = n / n.gcd(&2);
                for i in 0..r - 1 {
                    let (b, _) = alpha_counts(&space, i);
                    assert_eq!(b, Int::from(no.pow((r - 1) as u32)), "r={} n={} i={}", r, n, i);
                }
            }
        }
    }

    #[test]
    fn bw_counts() {
        // C_r: b = 1 iff 4 does not divide n
        for n in 1..=8u64 {
            let b = fixed_count_bw(&sp4(n));
            assert_eq!(b, int(if n % 4 == 0 { 0 } else { 1 }), "n={}", n);
        }
        // KP GL2: b = n
        for n in 1..=6u64 {
            assert_eq!(fixed_count_bw(&kp_gl2(n, 0)), int(n as i64));
        }
        // congruence count matches enumeration
        for n in 1..=6u64 {
            let cover = sp4(n);
            let space = coset_space(&cover, 50_000);
            assert_eq!(Some(fixed_count_bw(&cover)), fixed_count_bw_enumerated(&space), "n={}", n);
        }
    }

    #[test]
    fn exceptional_sl2() {
        // n odd: unique point (1 - n)/2 alpha
        for n in [3u64, 5, 7] {
            let e = exceptional_set(&sl2(n));
            let lat = e.solution.unwrap();
            assert_eq!(lat.basis.cols, 0);
            assert_eq!(lat.base_point, vec![Rat::from(int((1 - n as i64) / 2))]);
            assert_eq!(e.image_count, int(1));
        }
        // n = 4: no exceptional point
        let e4 = exceptional_set(&sl2(4));
        assert!(e4.solution.is_none());
        // n = 2 (metaplectic): target -n/2 = -1, point 0
        let e2 = exceptional_set(&sl2(2));
        let lat = e2.solution.unwrap();
        assert_eq!(lat.base_point, vec![Rat::from(int(0))]);
        assert_eq!(e2.image_count, int(1));
    }

    #[test]
    fn exceptional_metaplectic_sp4() {
        // Sp4, n = 2m with m odd: the exceptional point exists (Lemma form
        // rho - rho_{Q,n} + (n_alpha_r / 2) omega_{alpha_r})
        let c = sp4(6);
        let e = exceptional_set(&c);
        let lat = e.solution.clone().unwrap();
        assert_eq!(e.image_count, int(1));
        // verify against the closed form: target pairings
        let y: Vec<Int> = lat.base_point.iter().map(|v| v.to_integer()).collect();
        for i in 0..2 {
            let p = pairing_with_rho(&c, i, &y);
            assert_eq!(p, e.targets[i], "i={}", i);
        }
    }

    #[test]
    fn exceptional_gl2_line() {
        // GL2 (0,1): affine line y1 - y2 = 1 - n; image count = n
        for n in 2..=5u64 {
            let e = exceptional_set(&kp_gl2(n, 0));
            let lat = e.solution.clone().unwrap();
            assert_eq!(lat.basis.cols, 1);
            assert_eq!(e.image_count, int(n as i64));
        }
    }

    #[test]
    fn exceptional_cosets_are_w_fixed() {
        for cover in [sl2(3), sl2(2), sp4(3), sp4(6), kp_gl2(3, 0)] {
            let e = exceptional_set(&cover);
            if let Some(lat) = &e.solution {
                let space = coset_space(&cover, 10_000);
                let y: Vec<Int> = lat.base_point.iter().map(|v| v.to_integer()).collect();
                let rep = space.rep(&y);
                for i in 0..cover.datum.num_simple() {
                    let w = cover.datum.reflection_matrix(i);
                    assert_eq!(space.twisted_act(&w, &rep), rep);
                }
            }
        }
    }

    #[test]
    fn perm_signs() {
        // GL2 (0,1): sgn = (-1)^{a_alpha}
        for n in 1..=5u64 {
            let space = coset_space(&kp_gl2(n, 0), 10_000);
            let (_, a) = alpha_counts(&space, 0);
            let s = perm_sign(&space, 0).unwrap();
            let expect = if a.is_multiple_of(&int(2)) { 1 } else { -1 };
            assert_eq!(s, expect, "n={}", n);
        }
        // SL2 n=3: k -> -k on Z/3 is a single transposition
        let space = coset_space(&sl2(3), 100);
        assert_eq!(perm_sign(&space, 0).unwrap(), -1);
        // d = 1
        let space1 = coset_space(&sl2(1), 100);
        assert_eq!(perm_sign(&space1, 0).unwrap(), 1);
    }

    #[test]
    fn equal_length_simple_roots_match() {
        // For equal-length simple coroots, b and sgn agree (A2 and Savin GL3)
        let d = build_root_datum(RootLabel::Gl { rank: 3 }).unwrap();
        for n in 1..=4u64 {
            let cover = CoverDatum::new(d.clone(), savin_bisector(3), n).unwrap();
            let space = coset_space(&cover, 50_000);
            let (b0, _) = alpha_counts(&space, 0);
            let (b1, _) = alpha_counts(&space, 1);
            assert_eq!(b0, b1);
            assert_eq!(perm_sign(&space, 0).unwrap(), perm_sign(&space, 1).unwrap());
        }
    }

    #[test]
    fn bw_bounds_thm() {
        // semisimple: b <= |pi1(dual)|; sc: b <= 1; adjoint: b = |pi1|
        use crate::cover::dual_datum;
        let so5 = build_root_datum(RootLabel::SoOdd { rank: 2 }).unwrap();
        let bso = standard_bisector(&so5, 1);
        for n in 1..=10u64 {
            let cover = CoverDatum::new(so5.clone(), bso.clone(), n).unwrap();
            let b = fixed_count_bw(&cover);
            let pi1 = dual_datum(&cover).unwrap().pi1_order().unwrap();
            assert_eq!(b, pi1, "adjoint equality at n={}", n);
        }
        for n in 1..=10u64 {
            let cover = sp4(n);
            let b = fixed_count_bw(&cover);
            assert!(b <= int(1), "sc bound at n={}", n);
            let pi1 = dual_datum(&cover).unwrap().pi1_order().unwrap();
            assert!(b <= pi1);
        }
    }
}
