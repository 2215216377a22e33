//! The cover datum (D, Q, B, n): the lattice Y_{Q,n}, modified root datum,
//! center and fundamental group of the dual, metaplectic-type detection,
//! and dual-group periodicity.

use crate::exactlin::{
    hermite_normal_form, int, integer_kernel, rational_solve, Int, IntMatrix, LatticeError,
    QuotientStructure, Rat,
};
use crate::rootdata::{RootDatum, RootPair};
use num::{Integer, One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum CoverError {
    #[error("quadratic form Q is not Weyl-invariant")]
    NotWeylInvariant,
    #[error("finite index required")]
    FiniteIndexRequired,
    #[error("operation requires a semisimple datum")]
    SemisimpleRequired,
    #[error("no dual-group period found below {0}")]
    NoPeriodFound(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A degree-n cover datum: a root datum, an integer bisector D, and the
/// derived quantities Q, B, n_alpha.
#[derive(Clone, Debug)]
pub struct CoverDatum {
    pub datum: RootDatum,
    pub bisector: IntMatrix,
    pub gram: IntMatrix,
    pub n: u64,
    /// basis of Y_{Q,n} (columns, full rank)
    pub yqn_basis: IntMatrix,
    /// quotient Y / Y_{Q,n}
    pub quotient: QuotientStructure,
}

impl CoverDatum {
    /// Build the cover, checking Weyl invariance of Q on a spanning set.
    pub fn new(datum: RootDatum, bisector: IntMatrix, n: u64) -> Result<Self, CoverError> {
        assert!(n >= 1);
        assert_eq!(bisector.rows, datum.dim);
        assert_eq!(bisector.cols, datum.dim);
        let gram = {
            let t = bisector.transpose();
            let mut g = IntMatrix::zero(datum.dim, datum.dim);
            for i in 0..datum.dim {
                for j in 0..datum.dim {
                    g[(i, j)] = &bisector[(i, j)] + &t[(i, j)];
                }
            }
            g
        };
        // Weyl invariance of Q: check B(w u, w v) = B(u, v) for basis pairs
        // and all simple reflections (this spans the quadratic form).
        for s in 0..datum.num_simple() {
            let w = datum.reflection_matrix(s);
            let wt = w.transpose();
            let g2 = wt.mul(&gram).mul(&w);
            if g2 != gram {
                return Err(CoverError::NotWeylInvariant);
            }
        }
        let yqn_basis = yqn_lattice(&gram, n);
        let quotient = QuotientStructure::new(&IntMatrix::identity(datum.dim), &yqn_basis)?;
        if quotient.index_int().is_none() {
            return Err(CoverError::FiniteIndexRequired);
        }
        Ok(CoverDatum { datum, bisector, gram, n, yqn_basis, quotient })
    }

    pub fn dim(&self) -> usize {
        self.datum.dim
    }

    /// Q(v) = D(v, v).
    pub fn q_of(&self, v: &[Int]) -> Int {
        let dv = self.bisector.mul_vec(v);
        v.iter().zip(&dv).map(|(a, b)| a * b).sum()
    }

    /// B(u, v) = D(u, v) + D(v, u).
    pub fn b_of(&self, u: &[Int], v: &[Int]) -> Int {
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }

    /// n_alpha = n / gcd(n, Q(alpha^vee)).
    pub fn n_alpha(&self, coroot: &[Int]) -> u64 {
        let q = self.q_of(coroot);
        let g = q.gcd(&Int::from(self.n));
        let g: u64 = u64::try_from(g).unwrap();
        if g == 0 {
            self.n
        } else {
            self.n / g.gcd(&self.n)
        }
    }

    pub fn n_alpha_simple(&self, i: usize) -> u64 {
        self.n_alpha(&self.datum.simple_coroot(i))
    }

    /// gcd of the values of the simple root alpha_i over Y.
    pub fn root_gcd(&self, i: usize) -> u64 {
        let row = self.datum.simple_root(i);
        let mut g = Int::zero();
        for v in &row {
            g = g.gcd(v);
        }
        u64::try_from(g).unwrap()
    }

    /// Least k > 0 with k alpha_i^vee in Y_{Q,n}: the modulus governing
    /// twisted-reflection fixedness. Equals n / gcd(n, g_alpha Q(alpha^vee)).
    pub fn m_prime(&self, i: usize) -> u64 {
        let q = self.q_of(&self.datum.simple_coroot(i));
        let g = Int::from(self.root_gcd(i)) * q;
        let g = u64::try_from(g.gcd(&Int::from(self.n))).unwrap();
        self.n / g.gcd(&self.n)
    }

    /// Membership test y in Y_{Q,n} directly from the defining congruences.
    pub fn in_yqn(&self, y: &[Int]) -> bool {
        let n = Int::from(self.n);
        let by = self.gram.mul_vec(y);
        by.iter().all(|v| v.is_multiple_of(&n))
    }

    /// d = |Y / Y_{Q,n}|.
    pub fn index(&self) -> Int {
        self.quotient.index_int().unwrap()
    }

    /// Basis of Y_{Q,n}^{sc}: the lattice generated by all modified
    /// coroots n_beta beta^vee.
    pub fn yqn_sc_basis(&self) -> IntMatrix {
        let mut cols = Vec::new();
        for p in self.datum.positive_pairs() {
            let na = Int::from(self.n_alpha(&p.coroot));
            cols.push(p.coroot.iter().map(|c| c * &na).collect());
        }
        hermite_normal_form(&IntMatrix::from_cols(cols))
    }

    /// The regime of a simple root: can special cosets occur for it?
    /// Decided by the congruence criterion: exists k in g_alpha Z - 1 with
    /// m'_alpha | k and n_alpha not dividing k.
    pub fn special_possible(&self, i: usize) -> bool {
        let g = self.root_gcd(i) as i64;
        let na = self.n_alpha_simple(i) as i64;
        let mp = self.m_prime(i) as i64;
        if mp == na {
            return false;
        }
        let bound = 2 * na * g.max(1);
        (0..=bound).any(|j| {
            let k = g * j - 1;
            k.rem_euclid(mp) == 0 && k.rem_euclid(na) != 0
        })
    }

    /// Whether normal cosets can occur for alpha_i.
    pub fn normal_possible(&self, i: usize) -> bool {
        let g = self.root_gcd(i) as i64;
        let na = self.n_alpha_simple(i) as i64;
        (0..=2 * na * g.max(1)).any(|j| (g * j - 1).rem_euclid(na) == 0)
    }
}

/// Y_{Q,n} = {y in Y : B(y, y') in nZ for all y'}, via a homogeneous
/// congruence kernel; columns form a full-rank basis in HNF.
fn yqn_lattice(gram: &IntMatrix, n: u64) -> IntMatrix {
    let dim = gram.rows;
    // kernel of [gram | nI] projected to the first block
    let mut a = IntMatrix::zero(dim, dim * 2);
    for i in 0..dim {
        for j in 0..dim {
            a[(i, j)] = gram[(i, j)].clone();
        }
        a[(i, dim + i)] = Int::from(n);
    }
    let k = integer_kernel(&a);
    let mut cols = Vec::new();
    for j in 0..k.cols {
        let col: Vec<Int> = (0..dim).map(|i| k[(i, j)].clone()).collect();
        if col.iter().any(|x| !x.is_zero()) {
            cols.push(col);
        }
    }
    hermite_normal_form(&IntMatrix::from_cols(cols))
}

/// Outcome of metaplectic-type detection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetaplecticClass {
    NotMetaplectic,
    /// witness: index of a simple root with nonempty special locus
    Metaplectic { witness: usize },
}

/// The cover is of metaplectic type iff some simple root admits special
/// cosets. Consistency with the dichotomy: the witness must satisfy
/// n_alpha = 2 mod 4 and have all pairings <z, alpha> even.
pub fn metaplectic_class(c: &CoverDatum) -> MetaplecticClass {
    for i in 0..c.datum.num_simple() {
        if c.special_possible(i) {
            let na = c.n_alpha_simple(i);
            assert_eq!(na % 4, 2, "special witness must have n_alpha = 2 mod 4");
            assert_eq!(c.root_gcd(i) % 2, 0, "special witness needs even root gcd");
            return MetaplecticClass::Metaplectic { witness: i };
        }
    }
    MetaplecticClass::NotMetaplectic
}

/// The dual root datum data: Y_{Q,n}, Y_{Q,n}^{sc}, modified (co)roots,
/// rho_{Q,n}, center and fundamental-group elementary divisors.
#[derive(Clone, Debug)]
pub struct DualDatum {
    pub yqn_basis: IntMatrix,
    pub yqn_sc_basis: IntMatrix,
    /// modified simple coroots n_alpha alpha^vee (columns)
    pub modified_coroots: IntMatrix,
    /// n_alpha for each simple root
    pub n_alphas: Vec<u64>,
    /// Cartan matrix of the modified system
    pub dual_cartan: Vec<Vec<i64>>,
    pub dual_type: Vec<CartanLabel>,
    pub rho_qn: Vec<Rat>,
    pub center_divisors: Vec<Int>,
    /// elementary divisors of P(Y_{Q,n}^{sc}) / Y_{Q,n}; semisimple only
    pub pi1_divisors: Option<Vec<Int>>,
}

impl DualDatum {
    pub fn center_order(&self) -> Int {
        self.center_divisors.iter().product()
    }
    pub fn pi1_order(&self) -> Option<Int> {
        self.pi1_divisors.as_ref().map(|d| d.iter().product())
    }
}

/// Compute the dual datum of a cover.
pub fn dual_datum(c: &CoverDatum) -> Result<DualDatum, CoverError> {
    let d = &c.datum;
    let nsimple = d.num_simple();
    let n_alphas: Vec<u64> = (0..nsimple).map(|i| c.n_alpha_simple(i)).collect();
    let mut mod_cols = Vec::new();
    for i in 0..nsimple {
        let v = d.simple_coroot(i);
        let na = Int::from(n_alphas[i]);
        mod_cols.push(v.iter().map(|x| x * &na).collect::<Vec<Int>>());
    }
    let modified_coroots = IntMatrix::from_cols(mod_cols);
    // Cartan matrix of the dual system, whose roots are the modified
    // coroots: dualC[i][j] = <n_i alpha_i^vee, alpha_j / n_j>
    //                      = (n_i / n_j) cartan[j][i]
    let mut dual_cartan = vec![vec![0i64; nsimple]; nsimple];
    for i in 0..nsimple {
        for j in 0..nsimple {
            let num = d.cartan[j][i] * n_alphas[i] as i64;
            assert_eq!(num % n_alphas[j] as i64, 0, "modified Cartan not integral");
            dual_cartan[i][j] = num / n_alphas[j] as i64;
        }
    }
    let dual_type = classify_cartan(&dual_cartan);
    // rho_{Q,n} = half sum of modified positive coroots
    let mut rho_qn = vec![Rat::zero(); d.dim];
    for p in d.positive_pairs() {
        let na = Int::from(c.n_alpha(&p.coroot));
        for k in 0..d.dim {
            rho_qn[k] += Rat::new(&p.coroot[k] * &na, int(2));
        }
    }
    let yqn_sc = c.yqn_sc_basis();
    // every modified coroot lies in Y_{Q,n}
    for j in 0..modified_coroots.cols {
        assert!(c.in_yqn(&modified_coroots.col(j)), "modified coroot outside Y_Qn");
    }
    let center = QuotientStructure::new(&c.yqn_basis, &yqn_sc)?;
    let center_divisors = center.nontrivial_divisors();
    let pi1_divisors = if d.is_semisimple() {
        Some(pi1_divisors(c, &n_alphas)?)
    } else {
        None
    };
    Ok(DualDatum {
        yqn_basis: c.yqn_basis.clone(),
        yqn_sc_basis: yqn_sc,
        modified_coroots,
        n_alphas,
        dual_cartan,
        dual_type,
        rho_qn,
        center_divisors,
        pi1_divisors,
    })
}

/// Elementary divisors of P(Y_{Q,n}^{sc}) / Y_{Q,n} for a semisimple datum:
/// P is the weight lattice of the modified coroot system, i.e. the set of v
/// with <v, alpha_i> = 0 mod n_alpha_i for all simple i.
fn pi1_divisors(c: &CoverDatum, n_alphas: &[u64]) -> Result<Vec<Int>, CoverError> {
    let d = &c.datum;
    if d.num_simple() != d.dim {
        return Err(CoverError::SemisimpleRequired);
    }
    // rational basis of P: columns solve roots * v = diag(n_alpha) e_k
    let mut pcols: Vec<Vec<Rat>> = Vec::new();
    for k in 0..d.dim {
        let mut rhs = vec![Rat::zero(); d.dim];
        rhs[k] = Rat::from(Int::from(n_alphas[k]));
        pcols.push(rational_solve(&d.simple_roots, &rhs));
    }
    // clear denominators: common multiple ell
    let mut ell = Int::one();
    for col in &pcols {
        for v in col {
            ell = ell.lcm(v.denom());
        }
    }
    let p_scaled = IntMatrix::from_cols(
        pcols
            .iter()
            .map(|col| col.iter().map(|v| (v * Rat::from(ell.clone())).to_integer()).collect())
            .collect(),
    );
    let mut yqn_scaled = IntMatrix::zero(d.dim, c.yqn_basis.cols);
    for i in 0..d.dim {
        for j in 0..c.yqn_basis.cols {
            yqn_scaled[(i, j)] = &c.yqn_basis[(i, j)] * &ell;
        }
    }
    let q = QuotientStructure::new(&hermite_normal_form(&p_scaled), &yqn_scaled)?;
    Ok(q.nontrivial_divisors())
}

/// Canonical label of a connected Cartan component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanLabel {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl std::fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CartanLabel::A(r) => write!(f, "A{}", r),
            CartanLabel::B(r) => write!(f, "B{}", r),
            CartanLabel::C(r) => write!(f, "C{}", r),
            CartanLabel::D(r) => write!(f, "D{}", r),
            CartanLabel::E(r) => write!(f, "E{}", r),
            CartanLabel::F4 => write!(f, "F4"),
            CartanLabel::G2 => write!(f, "G2"),
        }
    }
}

/// Classify a Cartan matrix into its component type labels (sorted).
pub fn classify_cartan(cartan: &[Vec<i64>]) -> Vec<CartanLabel> {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut labels = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // connected component by BFS
        let mut comp = vec![start];
        seen[start] = true;
        let mut qi = 0;
        while qi < comp.len() {
            let u = comp[qi];
            qi += 1;
            for v in 0..n {
                if !seen[v] && cartan[u][v] != 0 && u != v {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        labels.push(classify_component(cartan, &comp));
    }
    labels.sort();
    labels
}

fn classify_component(cartan: &[Vec<i64>], comp: &[usize]) -> CartanLabel {
    let r = comp.len();
    if r == 1 {
        return CartanLabel::A(1);
    }
    let edges: Vec<(usize, usize, i64)> = {
        let mut e = Vec::new();
        for (ai, &u) in comp.iter().enumerate() {
            for &v in comp.iter().skip(ai + 1) {
                if cartan[u][v] != 0 {
                    e.push((u, v, cartan[u][v] * cartan[v][u]));
                }
            }
        }
        e
    };
    let degree = |u: usize| -> usize { edges.iter().filter(|(a, b, _)| *a == u || *b == u).count() };
    let max_bond = edges.iter().map(|(_, _, m)| *m).max().unwrap();
    match max_bond {
        3 => CartanLabel::G2,
        2 => {
            // B, C or F4 depending on the position of the double edge
            let (u, v, _) = *edges.iter().find(|(_, _, m)| *m == 2).unwrap();
            if r == 2 {
                return CartanLabel::C(2); // B2 = C2, normalize
            }
            let du = degree(u);
            let dv = degree(v);
            if du > 1 && dv > 1 {
                return CartanLabel::F4;
            }
            // the end node of the double edge: its coroot length decides
            let end = if du == 1 { u } else { v };
            let other = if end == u { v } else { u };
            // cartan[other][end] = -2 means coroot at `end` is long: type B
            if cartan[other][end] == -2 {
                CartanLabel::B(r)
            } else {
                CartanLabel::C(r)
            }
        }
        _ => {
            // simply laced: A, D or E by branch structure
            let deg3: Vec<usize> = comp.iter().copied().filter(|&u| degree(u) == 3).collect();
            if deg3.is_empty() {
                return CartanLabel::A(r);
            }
            let hub = deg3[0];
            // branch lengths from the hub
            let mut branch_lengths = Vec::new();
            for (a, b, _) in &edges {
                let nb = if *a == hub {
                    Some(*b)
                } else if *b == hub {
                    Some(*a)
                } else {
                    None
                };
                if let Some(mut prev) = Some(hub).filter(|_| nb.is_some()) {
                    let mut cur = nb.unwrap();
                    let mut len = 1;
                    loop {
                        let next = comp.iter().copied().find(|&w| {
                            w != prev && w != cur && cartan[cur][w] != 0
                        });
                        match next {
                            Some(w) => {
                                prev = cur;
                                cur = w;
                                len += 1;
                            }
                            None => break,
                        }
                    }
                    branch_lengths.push(len);
                }
            }
            branch_lengths.sort();
            match branch_lengths.as_slice() {
                [1, 1, _] => CartanLabel::D(r),
                [1, 2, _] => CartanLabel::E(r),
                _ => panic!("unrecognized simply-laced branch structure"),
            }
        }
    }
}

/// Comparable dual-group data: component types plus center divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualKey {
    pub types: Vec<CartanLabel>,
    pub center: Vec<Int>,
}

pub fn dual_key(c: &CoverDatum) -> Result<DualKey, CoverError> {
    let dd = dual_datum(c)?;
    Ok(DualKey { types: dd.dual_type, center: dd.center_divisors })
}

/// Smallest c such that the dual data at n and n + c agree for all
/// n <= n_max - c; verified on the whole window.
pub fn dual_period(
    datum: &RootDatum,
    bisector: &IntMatrix,
    n_max: usize,
) -> Result<(usize, usize), CoverError> {
    assert!(n_max >= 4);
    if !datum.is_semisimple() {
        return Err(CoverError::SemisimpleRequired);
    }
    let keys: Vec<DualKey> = (1..=n_max)
        .map(|n| {
            let c = CoverDatum::new(datum.clone(), bisector.clone(), n as u64)?;
            dual_key(&c)
        })
        .collect::<Result<_, _>>()?;
    'outer: for c in 1..n_max {
        for i in 0..n_max - c {
            if keys[i] != keys[i + c] {
                continue 'outer;
            }
        }
        return Ok((c, n_max));
    }
    Err(CoverError::NoPeriodFound(n_max))
}

/// Standard bisector for a simply-connected datum with Q(short coroot) =
/// q_short: upper-triangular from the invariant Gram matrix.
pub fn standard_bisector(d: &RootDatum, q_short: i64) -> IntMatrix {
    use crate::rootdata::RootLabel;
    match d.label {
        RootLabel::SimplyConnected { .. } => {
            let r = d.dim;
            let mut m = IntMatrix::zero(r, r);
            for i in 0..r {
                for j in 0..r {
                    let qj = q_short * d.coroot_ratio[j];
                    let g = qj * d.cartan[j][i];
                    if i == j {
                        m[(i, i)] = Int::from(g / 2);
                    } else if i < j {
                        m[(i, j)] = Int::from(g);
                    }
                }
            }
            m
        }
        RootLabel::SoOdd { rank } => {
            // Q(e_i) = -q_short as in the SO(2r+1) family
            let mut m = IntMatrix::zero(rank, rank);
            for i in 0..rank {
                m[(i, i)] = Int::from(-q_short);
            }
            m
        }
        RootLabel::Gl { rank } => {
            assert!(q_short % 2 == 0, "GL shorthand requires even Q on coroots; pass D explicitly");
            let mut m = IntMatrix::zero(rank, rank);
            for i in 0..rank {
                m[(i, i)] = Int::from(q_short / 2);
            }
            m
        }
    }
}

/// Kazhdan-Patterson bisector for GL(2) with twisting parameter c.
pub fn kp_gl2_bisector(c: i64) -> IntMatrix {
    IntMatrix::from_rows(vec![vec![c, c + 1], vec![c, c]])
}

/// Savin bisector for GL(r): D = -I, so Q(e_i) = -1 and Q(coroot) = -2.
pub fn savin_bisector(r: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(r, r);
    for i in 0..r {
        m[(i, i)] = int(-1);
    }
    m
}

/// n_alpha of an arbitrary root pair.
pub fn n_alpha_of(c: &CoverDatum, p: &RootPair) -> u64 {
    c.n_alpha(&p.coroot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, Family, RootLabel};
    use num::Signed;

    fn sl2(n: u64) -> CoverDatum {
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::A, rank: 1 }).unwrap();
        let b = standard_bisector(&d, 1);
        CoverDatum::new(d, b, n).unwrap()
    }

    fn kp_gl2(n: u64, c: i64) -> CoverDatum {
        let d = build_root_datum(RootLabel::Gl { rank: 2 }).unwrap();
        CoverDatum::new(d, kp_gl2_bisector(c), n).unwrap()
    }

    #[test]
    fn sl2_n_alpha() {
        // Q(alpha^vee) = 1, so n_alpha = n for every n
        for n in 1..=8 {
            let c = sl2(n);
            assert_eq!(c.q_of(&[int(1)]), int(1));
            assert_eq!(c.n_alpha_simple(0), n);
        }
    }

    #[test]
    fn kp_gl2_q_values() {
        // p = 0, q = 1 (c = 0): Q(alpha^vee) = -1, B(e1, e2) = 1
        let c = kp_gl2(3, 0);
        assert_eq!(c.q_of(&[int(1), int(-1)]), int(-1));
        assert_eq!(c.b_of(&[int(1), int(0)], &[int(0), int(1)]), int(1));
        assert_eq!(c.q_of(&[int(1), int(0)]), int(0));
    }

    #[test]
    fn sp4_n_long() {
        // Sp_{2r}: Q(short coroot) = 1, long coroots have Q = 2
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::C, rank: 2 }).unwrap();
        let b = standard_bisector(&d, 1);
        let c = CoverDatum::new(d, b, 6).unwrap();
        assert_eq!(c.q_of(&c.datum.simple_coroot(1)), int(1)); // short coroot
        assert_eq!(c.q_of(&c.datum.simple_coroot(0)), int(2)); // long coroot
        assert_eq!(c.n_alpha_simple(0), 3); // n/gcd(n,2)
        assert_eq!(c.n_alpha_simple(1), 6);
    }

    #[test]
    fn sl2_yqn() {
        // n odd: Y_{Q,n} = Z(n alpha); n = 2d: Z(d alpha)
        let c3 = sl2(3);
        assert_eq!(c3.index(), int(3));
        assert!(c3.in_yqn(&[int(3)]));
        assert!(!c3.in_yqn(&[int(1)]));
        let c4 = sl2(4);
        assert_eq!(c4.index(), int(2));
        assert!(c4.in_yqn(&[int(2)]));
        // Y^{sc}: Z(n alpha)
        let sc = c4.yqn_sc_basis();
        assert_eq!(sc[(0, 0)].abs(), int(4));
    }

    #[test]
    fn kp_gl2_yqn_is_ny() {
        for n in 1..=5 {
            let c = kp_gl2(n, 0);
            assert_eq!(c.index(), int((n * n) as i64));
            assert!(c.in_yqn(&[int(n as i64), int(0)]));
            assert!(c.in_yqn(&[int(0), int(n as i64)]));
        }
    }

    #[test]
    fn kp_twisted_yqn() {
        // Lemma: Y_{Q,n} = Z n_c (e1 + e2) + Z n e2 for the KP cover
        let n = 6u64;
        let cpar = 1i64;
        let c = kp_gl2(n, cpar);
        let nc = {
            let g = Int::from(n).gcd(&int(4 * cpar + 1));
            n / u64::try_from(g).unwrap()
        };
        assert!(c.in_yqn(&[int(nc as i64), int(nc as i64)]));
        assert!(c.in_yqn(&[int(0), int(n as i64)]));
        assert_eq!(c.index(), Int::from(n * nc));
    }

    #[test]
    fn brute_force_yqn_membership() {
        // Y_{Q,n} from congruence solving equals the brute-force box scan
        for (cover, dim) in [(sl2(4), 1), (kp_gl2(3, 1), 2)] {
            let n = Int::from(cover.n);
            let mut all = vec![vec![]];
            for _ in 0..dim {
                let mut next = Vec::new();
                for v in &all {
                    for k in -6i64..=6 {
                        let mut w: Vec<Int> = v.clone();
                        w.push(int(k));
                        next.push(w);
                    }
                }
                all = next;
            }
            for y in all {
                let brute = (0..dim).all(|j| {
                    let mut e = vec![Int::zero(); dim];
                    e[j] = Int::one();
                    cover.b_of(&y, &e).is_multiple_of(&n)
                });
                assert_eq!(cover.in_yqn(&y), brute);
            }
        }
    }

    #[test]
    fn weyl_stability_of_yqn() {
        let c = kp_gl2(4, 1);
        let w = c.datum.reflection_matrix(0);
        for j in 0..c.yqn_basis.cols {
            let img = w.mul_vec(&c.yqn_basis.col(j));
            assert!(c.in_yqn(&img));
        }
    }

    #[test]
    fn metaplectic_detection() {
        assert_eq!(metaplectic_class(&sl2(2)), MetaplecticClass::Metaplectic { witness: 0 });
        assert_eq!(metaplectic_class(&sl2(3)), MetaplecticClass::NotMetaplectic);
        assert_eq!(metaplectic_class(&sl2(4)), MetaplecticClass::NotMetaplectic);
        assert_eq!(metaplectic_class(&sl2(6)), MetaplecticClass::Metaplectic { witness: 0 });
        // Sp4 with n = 2m, m odd: special at the long simple root
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::C, rank: 2 }).unwrap();
        let b = standard_bisector(&d, 1);
        let c = CoverDatum::new(d.clone(), b.clone(), 6).unwrap();
        assert_eq!(metaplectic_class(&c), MetaplecticClass::Metaplectic { witness: 1 });
        let c4 = CoverDatum::new(d.clone(), b.clone(), 4).unwrap();
        assert_eq!(metaplectic_class(&c4), MetaplecticClass::NotMetaplectic);
        // simply-laced groups are never metaplectic
        let a2 = build_root_datum(RootLabel::SimplyConnected { family: Family::A, rank: 2 }).unwrap();
        let b2 = standard_bisector(&a2, 1);
        for n in 1..=8 {
            let c = CoverDatum::new(a2.clone(), b2.clone(), n).unwrap();
            assert_eq!(metaplectic_class(&c), MetaplecticClass::NotMetaplectic);
        }
        // KP GL2 is never metaplectic
        for n in 1..=6 {
            assert_eq!(metaplectic_class(&kp_gl2(n, 0)), MetaplecticClass::NotMetaplectic);
        }
    }

    #[test]
    fn dual_of_sl2() {
        // n = 2: Y_{Q,2} = Z alpha = Y, dual center divisors (2)
        let dd = dual_datum(&sl2(2)).unwrap();
        assert_eq!(dd.center_divisors, vec![int(2)]);
        // n = 1: Langlands dual of SL2 is PGL2, trivial center
        let dd1 = dual_datum(&sl2(1)).unwrap();
        assert!(dd1.center_divisors.is_empty());
        assert_eq!(dd1.pi1_order(), Some(int(2)));
    }

    #[test]
    fn dual_of_so_odd() {
        let d = build_root_datum(RootLabel::SoOdd { rank: 3 }).unwrap();
        let b = standard_bisector(&d, 1);
        for n in 1..=8u64 {
            let c = CoverDatum::new(d.clone(), b.clone(), n).unwrap();
            let dd = dual_datum(&c).unwrap();
            if n % 4 == 0 {
                assert_eq!(dd.dual_type, vec![CartanLabel::B(3)], "n={}", n);
                assert_eq!(dd.pi1_order(), Some(int(2)), "n={}", n);
            } else {
                assert_eq!(dd.dual_type, vec![CartanLabel::C(3)], "n={}", n);
                assert_eq!(dd.pi1_order(), Some(int(1)), "n={}", n);
            }
        }
    }

    #[test]
    fn rho_qn_pairs_to_one() {
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::C, rank: 2 }).unwrap();
        let b = standard_bisector(&d, 1);
        for n in 1..=6u64 {
            let c = CoverDatum::new(d.clone(), b.clone(), n).unwrap();
            let dd = dual_datum(&c).unwrap();
            for i in 0..2 {
                // <rho_{Q,n}, alpha_i / n_alpha_i> = 1
                let v = c.datum.pair_simple_rat(i, &dd.rho_qn);
                assert_eq!(v, Rat::from(Int::from(dd.n_alphas[i])));
            }
        }
    }

    #[test]
    fn period_sl2_and_sp4() {
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::A, rank: 1 }).unwrap();
        let b = standard_bisector(&d, 1);
        let (c, _) = dual_period(&d, &b, 32).unwrap();
        assert_eq!(c, 2);
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::C, rank: 2 }).unwrap();
        let b = standard_bisector(&d, 1);
        let (c, _) = dual_period(&d, &b, 40).unwrap();
        assert!(c <= 8);
    }

    #[test]
    fn period_q_zero() {
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::A, rank: 2 }).unwrap();
        let b = IntMatrix::zero(2, 2);
        let (c, _) = dual_period(&d, &b, 8).unwrap();
        assert_eq!(c, 1);
    }
}
