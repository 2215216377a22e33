//! Scattering, change-of-basis, and local coefficients matrices for a
//! cover, together with the determinant and trace identities.
//!
//! Everything assumes the epsilon = 1 regime (mu_{2n} inside F^x) and an
//! unramified character chi of the covering torus center, parametrized by
//! torus indeterminates attached to a fixed basis of Y_{Q,n}.

use super::matrix::SymMatrix;
use super::ring::{Gens, Ring, RingRef, SymExpr};
use crate::cover::CoverDatum;
use crate::exactlin::{lattice_coords, unimodular_inverse, Int, IntMatrix};
use crate::orbits::{alpha_counts, coset_space, pairing_with_rho, perm_sign, twisted_point, CosetSpace};
use crate::rootdata::{RootPair, WeylElement};

#[derive(Debug, thiserror::Error)]
pub enum LcmError {
    #[error("enumeration cap exceeded (d = {0})")]
    CapExceeded(Int),
    #[error("epsilon != +1 is unsupported in the symbolic layer")]
    EpsilonUnsupported,
    #[error("the requested point is not exceptional")]
    NotExceptional,
    #[error("metaplectic covers are unsupported here (special points present)")]
    MetaplecticUnsupported,
    #[error("no exceptional point exists for this cover")]
    NoExceptional,
}

/// Ring with one torus variable per Y_{Q,n} basis vector and Gauss/epsilon
/// symbols for the cover degree.
pub fn ring_for_cover(cover: &CoverDatum) -> RingRef {
    Ring::new(cover.n, cover.yqn_basis.cols, 1)
}

/// An unramified character of the covering-torus center: its value on
/// s_y for y in Y_{Q,n} is the torus monomial with exponents mat * coords(y).
#[derive(Clone, Debug)]
pub struct Character {
    pub mat: IntMatrix,
}

impl Character {
    /// The generic base character: s_{b_i} -> t_i on the fixed basis.
    pub fn base(cover: &CoverDatum) -> Character {
        Character { mat: IntMatrix::identity(cover.yqn_basis.cols) }
    }

    /// The twist {}^w chi: s_y -> chi(s_{w^{-1} y}).
    pub fn twist(&self, cover: &CoverDatum, w: &IntMatrix) -> Character {
        let w_inv = unimodular_inverse(w);
        // coords o w^{-1} o basis, an integer matrix on Y_{Q,n}
        let img = w_inv.mul(&cover.yqn_basis);
        let mut cols = Vec::new();
        for j in 0..img.cols {
            let c = lattice_coords(&cover.yqn_basis, &img.col(j))
                .expect("Weyl action preserves Y_Qn");
            cols.push(c);
        }
        Character { mat: self.mat.mul(&IntMatrix::from_cols(cols)) }
    }

    /// chi(s_y) as a torus monomial; y must lie in Y_{Q,n}.
    pub fn value(&self, cover: &CoverDatum, g: &Gens, y: &[Int]) -> SymExpr {
        let c = lattice_coords(&cover.yqn_basis, y).expect("value of chi outside Y_Qn");
        let e = self.mat.mul_vec(&c);
        let exps: Vec<i64> = e.iter().map(|v| i64::try_from(v.clone()).unwrap()).collect();
        g.t_mono(&exps)
    }

    /// chi(h_alpha(pi^{n_alpha})) for a root pair.
    pub fn x_alpha(&self, cover: &CoverDatum, g: &Gens, p: &RootPair) -> SymExpr {
        let na = Int::from(cover.n_alpha(&p.coroot));
        let v: Vec<Int> = p.coroot.iter().map(|c| c * &na).collect();
        self.value(cover, g, &v)
    }
}

/// The gamma-factor bundle attached to (cover, chi, alpha).
#[derive(Clone)]
pub struct GammaBundle {
    pub x_alpha: SymExpr,
    pub gamma_inv: SymExpr,
    pub meta_gamma_inv: Option<SymExpr>,
    pub plancherel_inv: SymExpr,
}

impl GammaBundle {
    pub fn new(cover: &CoverDatum, g: &Gens, chi: &Character, alpha: usize) -> GammaBundle {
        let pair = RootPair {
            root: cover.datum.simple_root(alpha),
            coroot: cover.datum.simple_coroot(alpha),
        };
        let x = chi.x_alpha(cover, g, &pair);
        let qi = g.qi(1);
        let gamma_inv = g.one_minus(&qi.mul(&x.inv())).div(&g.one_minus(&x));
        let plancherel_inv = gamma_inv
            .mul(&g.one_minus(&qi.mul(&x)).div(&g.one_minus(&x.inv())));
        let meta_gamma_inv = if cover.special_possible(alpha) {
            let na = cover.n_alpha_simple(alpha);
            assert_eq!(na % 2, 0);
            let m = na / 2;
            let mv: Vec<Int> = pair.coroot.iter().map(|c| c * Int::from(m)).collect();
            let half = chi.value(cover, g, &mv);
            // the rewritten Gauss value g_{m_alpha Q(alpha)} = q^{-1/2} omega
            let gv = g.qi(1).mul(&g.r()).mul(&g.omega());
            let num = g
                .one_minus(&qi.mul(&x.inv()))
                .mul(&g.one().sub(&half.mul(&gv)));
            let den = g.one_minus(&x).mul(&g.one().sub(&half.inv().mul(&gv)));
            Some(num.div(&den))
        } else {
            None
        };
        GammaBundle { x_alpha: x, gamma_inv, meta_gamma_inv, plancherel_inv }
    }
}

/// Gindikin-Karpelevich coefficient of w: the product over the positive
/// roots sent negative of (1 - q^{-1} x_alpha)/(1 - x_alpha).
pub fn gk_coeff(cover: &CoverDatum, g: &Gens, chi: &Character, w: &WeylElement) -> SymExpr {
    let mut out = SymExpr::one(&g.ring);
    for p in crate::rootdata::inversion_set(&cover.datum, w) {
        let x = chi.x_alpha(cover, g, &p);
        out = out.mul(&g.one_minus(&g.qi(1).mul(&x)).div(&g.one_minus(&x)));
    }
    out
}

fn ceil_div(a: i64, b: i64) -> i64 {
    assert!(b > 0);
    a.div_euclid(b) + if a.rem_euclid(b) != 0 { 1 } else { 0 }
}

/// tau^1 diagonal value at y: (1 - q^{-1}) x_alpha^{ceil(<y, alpha>/n_alpha)}
/// / (1 - x_alpha).
fn tau1_value(cover: &CoverDatum, g: &Gens, chi: &Character, alpha: usize, y: &[Int]) -> SymExpr {
    let pair = RootPair {
        root: cover.datum.simple_root(alpha),
        coroot: cover.datum.simple_coroot(alpha),
    };
    let x = chi.x_alpha(cover, g, &pair);
    let na = cover.n_alpha_simple(alpha) as i64;
    let pv = i64::try_from(cover.datum.pair_simple(alpha, y)).unwrap();
    let k = ceil_div(pv, na);
    g.one_minus(&g.qi(1)).mul(&x.pow(k)).div(&g.one_minus(&x))
}

/// tau^2 value at y (epsilon = 1): the Gauss symbol at <y - rho, alpha>
/// Q(alpha^vee).
fn tau2_value(cover: &CoverDatum, g: &Gens, alpha: usize, y: &[Int]) -> SymExpr {
    let p = pairing_with_rho(cover, alpha, y);
    let q = cover.q_of(&cover.datum.simple_coroot(alpha));
    let idx = i64::try_from(p * q).unwrap();
    g.gauss(idx)
}

/// (^{w_alpha} chi)^{-1}(s_z) = chi(s_{w_alpha z})^{-1} for z in Y_{Q,n}.
fn twisted_inv_value(
    cover: &CoverDatum,
    g: &Gens,
    chi: &Character,
    alpha: usize,
    z: &[Int],
) -> SymExpr {
    let w = cover.datum.reflection_matrix(alpha);
    let wz = w.mul_vec(z);
    chi.value(cover, g, &wz).inv()
}

/// Scattering matrix of a simple reflection: entry (row r, col c) is
/// tau(w_alpha, chi, s_{y_c}, s_{y_r}).
pub fn scattering_rank_one(
    cover: &CoverDatum,
    g: &Gens,
    reps: &[Vec<Int>],
    alpha: usize,
    chi: &Character,
) -> SymMatrix {
    let mut m = SymMatrix::zero(&g.ring, reps.to_vec());
    let w = cover.datum.reflection_matrix(alpha);
    for (r, yr) in reps.iter().enumerate() {
        let twisted = twisted_point(cover, &w, yr);
        for (c, yc) in reps.iter().enumerate() {
            let mut entry = SymExpr::zero(&g.ring);
            // tau^1 branch: y_c = y_r + z
            let z1: Vec<Int> = yc.iter().zip(yr).map(|(a, b)| a - b).collect();
            if cover.in_yqn(&z1) {
                let t = twisted_inv_value(cover, g, chi, alpha, &z1)
                    .mul(&tau1_value(cover, g, chi, alpha, yr));
                entry = entry.add(&t);
            }
            // tau^2 branch: y_c = w_alpha[y_r] + z
            let z2: Vec<Int> = yc.iter().zip(&twisted).map(|(a, b)| a - b).collect();
            if cover.in_yqn(&z2) {
                let t = twisted_inv_value(cover, g, chi, alpha, &z2)
                    .mul(&tau2_value(cover, g, alpha, yr));
                entry = entry.add(&t);
            }
            *m.at_mut(r, c) = entry;
        }
    }
    m
}

/// Scattering matrix of a general Weyl element via the cocycle relation:
/// S(w2 w1, chi) = S(w1, chi) S(w2, {}^{w1} chi) along the reduced word.
pub fn scattering_matrix(
    cover: &CoverDatum,
    g: &Gens,
    reps: &[Vec<Int>],
    w: &WeylElement,
    chi: &Character,
) -> SymMatrix {
    let mut out = SymMatrix::identity(&g.ring, reps.to_vec());
    let mut partial = IntMatrix::identity(cover.dim());
    for &i in &w.word {
        let chi_i = chi.twist(cover, &partial);
        let s = scattering_rank_one(cover, g, reps, i, &chi_i);
        out = out.mul(&s);
        partial = cover.datum.reflection_matrix(i).mul(&partial);
    }
    out
}

/// Change-of-basis matrix of a simple reflection: the monomial permutation
/// with (s(i), i)-entry ({}^{w_alpha} chi)(s_{z_i})^{-1} where
/// w_alpha(y_i) = y_{s(i)} + z_i.
pub fn change_basis_matrix(
    cover: &CoverDatum,
    g: &Gens,
    reps: &[Vec<Int>],
    alpha: usize,
    chi: &Character,
) -> SymMatrix {
    let w = cover.datum.reflection_matrix(alpha);
    let mut m = SymMatrix::zero(&g.ring, reps.to_vec());
    for (i, yi) in reps.iter().enumerate() {
        let img = w.mul_vec(yi);
        let s_i = reps
            .iter()
            .position(|yj| {
                let z: Vec<Int> = img.iter().zip(yj).map(|(a, b)| a - b).collect();
                cover.in_yqn(&z)
            })
            .expect("untwisted image must land in some rep coset");
        let z: Vec<Int> = img.iter().zip(&reps[s_i]).map(|(a, b)| a - b).collect();
        *m.at_mut(s_i, i) = twisted_inv_value(cover, g, chi, alpha, &z);
    }
    m
}

/// Local coefficients matrix M = S C of a simple reflection, with the
/// support pattern of the two pieces verified.
pub fn local_coeff_matrix(
    cover: &CoverDatum,
    g: &Gens,
    reps: &[Vec<Int>],
    alpha: usize,
    chi: &Character,
) -> SymMatrix {
    let s = scattering_rank_one(cover, g, reps, alpha, chi);
    let c = change_basis_matrix(cover, g, reps, alpha, chi);
    let m = s.mul(&c);
    // support: M(y_i, y_j) vanishes unless y_i = w_alpha(y_j) or
    // y_i = y_j + alpha^vee mod Y_{Q,n}
    let w = cover.datum.reflection_matrix(alpha);
    let coroot = cover.datum.simple_coroot(alpha);
    for (i, yi) in reps.iter().enumerate() {
        for (j, yj) in reps.iter().enumerate() {
            if m.at(i, j).is_zero() {
                continue;
            }
            let wj = w.mul_vec(yj);
            let d1: Vec<Int> = yi.iter().zip(&wj).map(|(a, b)| a - b).collect();
            let d2: Vec<Int> = yi
                .iter()
                .zip(yj.iter().zip(&coroot))
                .map(|(a, (b, c))| a - b - c)
                .collect();
            assert!(
                cover.in_yqn(&d1) || cover.in_yqn(&d2),
                "local coefficients support violates the two-line pattern"
            );
        }
    }
    m
}

/// Outcome of a determinant verification.
#[derive(Clone)]
pub struct DetVerdict {
    pub matches: bool,
    pub det: SymExpr,
    pub rhs: SymExpr,
}

impl DetVerdict {
    pub fn ok(&self) -> bool {
        self.matches
    }
}

/// Compare expressions that may contain the sign symbol omega by
/// evaluating at omega = +1 and omega = -1.
pub fn equals_omega_safe(a: &SymExpr, b: &SymExpr) -> bool {
    if a.has_omega() || b.has_omega() {
        a.subst_omega(1).equals(&b.subst_omega(1)) && a.subst_omega(-1).equals(&b.subst_omega(-1))
    } else {
        a.equals(b)
    }
}

/// Verify the closed form of det(M(w_alpha, i(chi))): the sign, Plancherel
/// power, chi-monomial and gamma (or metaplectic gamma) power.
pub fn verify_det_t_m1(
    cover: &CoverDatum,
    alpha: usize,
    cap: u64,
) -> Result<DetVerdict, LcmError> {
    let space = coset_space(cover, cap);
    let reps = space
        .reps
        .clone()
        .ok_or_else(|| LcmError::CapExceeded(space.d.clone()))?;
    let ring = ring_for_cover(cover);
    let g = Gens::new(&ring);
    let chi = Character::base(cover);
    let m = local_coeff_matrix(cover, &g, &reps, alpha, &chi);
    let det = m.det();
    let rhs = det_t_m1_rhs(cover, &space, &g, &chi, alpha)?;
    let matches = equals_omega_safe(&det, &rhs);
    Ok(DetVerdict { matches, det, rhs })
}

/// The right-hand side of the determinant theorem, assembled from the
/// fixed-point counts, the permutation sign, and the gamma bundle.
pub fn det_t_m1_rhs(
    cover: &CoverDatum,
    space: &CosetSpace,
    g: &Gens,
    chi: &Character,
    alpha: usize,
) -> Result<SymExpr, LcmError> {
    let (b, a) = alpha_counts(space, alpha);
    let sgn = perm_sign(space, alpha).map_err(|_| LcmError::CapExceeded(space.d.clone()))?;
    let bundle = GammaBundle::new(cover, g, chi, alpha);
    let a_i64 = i64::try_from(a.clone()).unwrap();
    let b_i64 = i64::try_from(b.clone()).unwrap();
    let d_i64 = i64::try_from(space.d.clone()).unwrap();
    let na = cover.n_alpha_simple(alpha) as i64;
    let mut rhs = bundle.plancherel_inv.pow(a_i64);
    if sgn * (if a_i64 % 2 == 0 { 1 } else { -1 }) < 0 {
        rhs = rhs.neg();
    }
    let coroot = cover.datum.simple_coroot(alpha);
    let (exponent, gamma_pow) = if cover.special_possible(alpha) {
        let m_alpha = na / 2;
        (
            b_i64 * m_alpha - d_i64,
            bundle.meta_gamma_inv.clone().expect("special regime").pow(b_i64),
        )
    } else {
        (b_i64 * na - d_i64, bundle.gamma_inv.pow(b_i64))
    };
    let kv: Vec<Int> = coroot.iter().map(|c| c * Int::from(exponent)).collect();
    let mono = chi.value(cover, g, &kv);
    Ok(rhs.mul(&mono).mul(&gamma_pow))
}

/// Closed forms for the SL(2)-type trace: gamma^{-1} (n = 1), metaplectic
/// gamma^{-1} (n = 2), and the geometric forms for n >= 3.
pub fn trace_closed_form(cover: &CoverDatum) -> Result<DetVerdict, LcmError> {
    assert_eq!(cover.dim(), 1, "trace closed forms are for SL2-type covers");
    let n = cover.n;
    let space = coset_space(cover, 10_000);
    let reps = space.reps.clone().unwrap();
    let ring = ring_for_cover(cover);
    let g = Gens::new(&ring);
    let chi = Character::base(cover);
    let m = local_coeff_matrix(cover, &g, &reps, 0, &chi);
    let tr = m.trace();
    let bundle = GammaBundle::new(cover, &g, &chi, 0);
    let expect = match n {
        1 => bundle.gamma_inv.clone(),
        2 => bundle.meta_gamma_inv.clone().expect("n = 2 is metaplectic"),
        _ => {
            let k = if n % 4 == 0 { n as i64 / 2 } else { n as i64 };
            let mono = chi.value(cover, &g, &[Int::from(k)]);
            g.one_minus(&g.qi(1)).div(&g.one_minus(&mono))
        }
    };
    let matches = equals_omega_safe(&tr, &expect);
    Ok(DetVerdict { matches, det: tr, rhs: expect })
}

/// The auxiliary cyclotomic averaging identity behind the trace closed
/// forms: (1 - q^{-1})/(1 - T^n) = (1/n) sum_i (1 - q^{-1} T^{-1}
/// zeta^{-i})/(1 - T zeta^i) in Q(zeta_n)(T, q^{-1}).
pub fn laux_identity(n: u32) -> bool {
    assert!(n >= 2);
    let ring = Ring::new(0, 1, n);
    let g = Gens::new(&ring);
    let t = g.t_mono(&[1]);
    let qi = g.qi(1);
    let lhs = g.one_minus(&qi).div(&g.one_minus(&t.pow(n as i64)));
    let mut sum = g.zero();
    for i in 0..n as i64 {
        let zi = g.zeta(i);
        let term = g
            .one_minus(&qi.mul(&t.inv()).mul(&g.zeta(-i)))
            .div(&g.one_minus(&t.mul(&zi)));
        sum = sum.add(&term);
    }
    let avg = sum.mul(&g.rational(1, n as i64));
    lhs.equals(&avg)
}
