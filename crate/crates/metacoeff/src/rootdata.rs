//! Root data for the supported families in Bourbaki-compatible coordinates,
//! and Weyl group machinery: reflections, positive systems, rho, reduced
//! words.

use crate::exactlin::{
    int, integer_solve, Int, IntMatrix, Rat,
};
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

/// Structured name of a supported root datum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootLabel {
    /// Almost-simple simply-connected group, Y = coroot lattice.
    SimplyConnected { family: Family, rank: usize },
    /// SO(2r+1), adjoint type B_r with Y = Z^r.
    SoOdd { rank: usize },
    /// GL(r) with Y = Z^r.
    Gl { rank: usize },
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLabel::SimplyConnected { family, rank } => write!(f, "{:?}{} (sc)", family, rank),
            RootLabel::SoOdd { rank } => write!(f, "SO{}", 2 * rank + 1),
            RootLabel::Gl { rank } => write!(f, "GL{}", rank),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RootDataError {
    #[error("unsupported family/rank/isogeny: {0}")]
    UnsupportedSpec(String),
    #[error("Weyl group enumeration cap exceeded (cap {0})")]
    CapExceeded(usize),
}

/// A root together with its coroot; `root` is a functional on Y (a row
/// vector), `coroot` a vector in Y.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootPair {
    pub root: Vec<Int>,
    pub coroot: Vec<Int>,
}

/// A root datum with a fixed basis of Y.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub label: RootLabel,
    pub rank: usize,
    /// dimension of Y (= number of coordinates); equals `rank` for
    /// semisimple data and for GL(r)
    pub dim: usize,
    /// columns are the simple coroots
    pub simple_coroots: IntMatrix,
    /// rows are the simple roots as functionals on Y
    pub simple_roots: IntMatrix,
    /// cartan[i][j] = value of alpha_i on alpha_j^vee
    pub cartan: Vec<Vec<i64>>,
    /// length ratio of each simple coroot within the coroot system
    /// (1 for short coroots, 2 or 3 for long ones)
    pub coroot_ratio: Vec<i64>,
    positive: Vec<RootPair>,
    rho: Vec<Rat>,
    two_rho_x: Vec<Int>,
}

impl RootDatum {
    pub fn num_simple(&self) -> usize {
        self.simple_coroots.cols
    }

    pub fn simple_coroot(&self, i: usize) -> Vec<Int> {
        self.simple_coroots.col(i)
    }

    pub fn simple_root(&self, i: usize) -> Vec<Int> {
        self.simple_roots.row(i)
    }

    /// Value of the simple root alpha_i on a vector of Y.
    pub fn pair_simple(&self, i: usize, y: &[Int]) -> Int {
        let row = self.simple_roots.row(i);
        row.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    pub fn pair_simple_rat(&self, i: usize, y: &[Rat]) -> Rat {
        let row = self.simple_roots.row(i);
        row.iter()
            .zip(y)
            .map(|(a, b)| Rat::from(a.clone()) * b)
            .sum()
    }

    /// Value of an arbitrary functional on a rational vector.
    pub fn pair_rat(root: &[Int], y: &[Rat]) -> Rat {
        root.iter().zip(y).map(|(a, b)| Rat::from(a.clone()) * b).sum()
    }

    pub fn pair(root: &[Int], y: &[Int]) -> Int {
        root.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// Matrix of the simple reflection on Y: y -> y - alpha_i(y) alpha_i^vee.
    pub fn reflection_matrix(&self, i: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(self.dim);
        let coroot = self.simple_coroot(i);
        let root = self.simple_root(i);
        for r in 0..self.dim {
            for c in 0..self.dim {
                let sub = &coroot[r] * &root[c];
                m[(r, c)] -= sub;
            }
        }
        m
    }

    /// All positive coroots with their roots.
    pub fn positive_pairs(&self) -> &[RootPair] {
        &self.positive
    }

    pub fn positive_coroots(&self) -> Vec<Vec<Int>> {
        self.positive.iter().map(|p| p.coroot.clone()).collect()
    }

    /// Half sum of positive coroots.
    pub fn rho(&self) -> &[Rat] {
        &self.rho
    }

    /// Sum of positive roots, as a functional on Y (controls delta_B).
    pub fn two_rho_x(&self) -> &[Int] {
        &self.two_rho_x
    }

    pub fn is_semisimple(&self) -> bool {
        !matches!(self.label, RootLabel::Gl { .. })
    }

    pub fn is_simply_connected(&self) -> bool {
        matches!(self.label, RootLabel::SimplyConnected { .. })
    }

    pub fn is_adjoint(&self) -> bool {
        matches!(self.label, RootLabel::SoOdd { .. })
            | matches!(
                self.label,
                RootLabel::SimplyConnected { family: Family::E8 | Family::F4 | Family::G2, .. }
            )
    }

    /// Apply a Weyl matrix to an integer vector.
    pub fn act(w: &IntMatrix, y: &[Int]) -> Vec<Int> {
        w.mul_vec(y)
    }

    pub fn act_rat(w: &IntMatrix, y: &[Rat]) -> Vec<Rat> {
        w.mul_rat_vec(y)
    }

    /// Coordinates of a coroot in the simple-coroot basis (integral by
    /// saturation of the coroot lattice in its span).
    pub fn coroot_coords(&self, v: &[Int]) -> Option<Vec<Int>> {
        integer_solve(&self.simple_coroots, v)
    }
}

fn cartan_matrix(family: Family, rank: usize) -> Option<Vec<Vec<i64>>> {
    let r = rank;
    let mut c = vec![vec![0i64; r]; r];
    for i in 0..r {
        c[i][i] = 2;
    }
    let mut edge = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match family {
        Family::A => {
            if r < 1 {
                return None;
            }
            for i in 0..r.saturating_sub(1) {
                edge(i, i + 1, -1, -1);
            }
        }
        Family::B => {
            // alpha_r is the short root: <alpha_{r-1}, alpha_r^vee> = -2
            if r < 2 {
                return None;
            }
            for i in 0..r - 2 {
                edge(i, i + 1, -1, -1);
            }
            edge(r - 2, r - 1, -2, -1);
        }
        Family::C => {
            // alpha_r is the long root: <alpha_r, alpha_{r-1}^vee> = -2
            if r < 1 {
                return None;
            }
            if r >= 2 {
                for i in 0..r - 2 {
                    edge(i, i + 1, -1, -1);
                }
                edge(r - 2, r - 1, -1, -2);
            }
        }
        Family::D => {
            if r < 3 {
                return None;
            }
            // chain 1..r-1, with node r attached to node r-2
            for i in 0..r - 2 {
                edge(i, i + 1, -1, -1);
            }
            edge(r - 3, r - 1, -1, -1);
        }
        Family::E6 | Family::E7 | Family::E8 => {
            let need = match family {
                Family::E6 => 6,
                Family::E7 => 7,
                _ => 8,
            };
            if r != need {
                return None;
            }
            // Bourbaki numbering: chain 1-3-4-5-6(-7)(-8), node 2 attached to 4
            let chain: Vec<usize> = match r {
                6 => vec![0, 2, 3, 4, 5],
                7 => vec![0, 2, 3, 4, 5, 6],
                _ => vec![0, 2, 3, 4, 5, 6, 7],
            };
            for w in chain.windows(2) {
                edge(w[0], w[1], -1, -1);
            }
            edge(1, 3, -1, -1);
        }
        Family::F4 => {
            if r != 4 {
                return None;
            }
            edge(0, 1, -1, -1);
            edge(1, 2, -2, -1); // alpha_2 long, alpha_3 short
            edge(2, 3, -1, -1);
        }
        Family::G2 => {
            if r != 2 {
                return None;
            }
            // alpha_1 short root (long coroot), alpha_2 long root
            edge(0, 1, -1, -3);
        }
    }
    Some(c)
}

/// Length ratios of the simple coroots (1 = short coroot).
fn coroot_ratios(family: Family, rank: usize) -> Vec<i64> {
    let r = rank;
    match family {
        Family::A | Family::D | Family::E6 | Family::E7 | Family::E8 => vec![1; r],
        // B_r: coroot of the short root alpha_r is the long coroot
        Family::B => {
            let mut v = vec![1; r];
            v[r - 1] = 2;
            v
        }
        // C_r: coroot of the long root alpha_r is the short coroot
        Family::C => {
            if r == 1 {
                vec![1]
            } else {
                let mut v = vec![2; r];
                v[r - 1] = 1;
                v
            }
        }
        Family::F4 => vec![1, 1, 2, 2],
        Family::G2 => vec![3, 1],
    }
}

/// Construct the root datum for a supported label.
pub fn build_root_datum(label: RootLabel) -> Result<RootDatum, RootDataError> {
    let (dim, nsimple, coroots, roots, cartan, ratios) = match label {
        RootLabel::SimplyConnected { family, rank } => {
            let cartan = cartan_matrix(family, rank)
                .ok_or_else(|| RootDataError::UnsupportedSpec(format!("{:?} rank {}", family, rank)))?;
            let ratios = coroot_ratios(family, rank);
            // Y-basis = simple coroots; roots are the Cartan rows
            let coroots = IntMatrix::identity(rank);
            let roots = IntMatrix::from_rows(cartan.clone());
            (rank, rank, coroots, roots, cartan, ratios)
        }
        RootLabel::SoOdd { rank } => {
            if rank < 2 {
                return Err(RootDataError::UnsupportedSpec(format!("SOodd rank {}", rank)));
            }
            let r = rank;
            let mut coroot_cols = Vec::new();
            let mut root_rows = Vec::new();
            for i in 0..r - 1 {
                let mut cv = vec![Int::zero(); r];
                cv[i] = int(1);
                cv[i + 1] = int(-1);
                coroot_cols.push(cv);
                let mut rv = vec![Int::zero(); r];
                rv[i] = int(1);
                rv[i + 1] = int(-1);
                root_rows.push(rv);
            }
            let mut cv = vec![Int::zero(); r];
            cv[r - 1] = int(2);
            coroot_cols.push(cv);
            let mut rv = vec![Int::zero(); r];
            rv[r - 1] = int(1);
            root_rows.push(rv);
            let cartan = cartan_matrix(Family::B, r).unwrap();
            let ratios = coroot_ratios(Family::B, r);
            (
                r,
                r,
                IntMatrix::from_cols(coroot_cols),
                IntMatrix::from_big_rows(root_rows),
                cartan,
                ratios,
            )
        }
        RootLabel::Gl { rank } => {
            if rank < 2 {
                return Err(RootDataError::UnsupportedSpec(format!("GL rank {}", rank)));
            }
            let r = rank;
            let mut coroot_cols = Vec::new();
            let mut root_rows = Vec::new();
            for i in 0..r - 1 {
                let mut cv = vec![Int::zero(); r];
                cv[i] = int(1);
                cv[i + 1] = int(-1);
                coroot_cols.push(cv.clone());
                root_rows.push(cv);
            }
            let cartan = cartan_matrix(Family::A, r - 1).unwrap();
            let ratios = coroot_ratios(Family::A, r - 1);
            (
                r,
                r - 1,
                IntMatrix::from_cols(coroot_cols),
                IntMatrix::from_big_rows(root_rows),
                cartan,
                ratios,
            )
        }
    };

    // sanity: declared Cartan matrix matches the pairing
    for i in 0..nsimple {
        for j in 0..nsimple {
            let v: Int = roots
                .row(i)
                .iter()
                .zip(&coroots.col(j))
                .map(|(a, b)| a * b)
                .sum();
            assert_eq!(v, int(cartan[i][j]), "cartan mismatch at ({}, {})", i, j);
        }
    }

    let mut datum = RootDatum {
        label,
        rank: nsimple,
        dim,
        simple_coroots: coroots,
        simple_roots: roots,
        cartan,
        coroot_ratio: ratios,
        positive: Vec::new(),
        rho: Vec::new(),
        two_rho_x: Vec::new(),
    };
    let positive = positive_closure(&datum);
    let mut rho = vec![Rat::zero(); dim];
    let mut two_rho_x = vec![Int::zero(); dim];
    for p in &positive {
        for k in 0..dim {
            rho[k] += Rat::new(p.coroot[k].clone(), int(2));
            two_rho_x[k] += &p.root[k];
        }
    }
    datum.positive = positive;
    datum.rho = rho;
    datum.two_rho_x = two_rho_x;
    Ok(datum)
}

/// Closure of the simple roots under simple reflections, restricted to the
/// positive ones.
fn positive_closure(d: &RootDatum) -> Vec<RootPair> {
    let refl: Vec<IntMatrix> = (0..d.num_simple()).map(|i| d.reflection_matrix(i)).collect();
    let mut seen: Vec<RootPair> = Vec::new();
    let mut queue: VecDeque<RootPair> = VecDeque::new();
    for i in 0..d.num_simple() {
        let p = RootPair { root: d.simple_root(i), coroot: d.simple_coroot(i) };
        queue.push_back(p);
    }
    let mut all: Vec<RootPair> = Vec::new();
    while let Some(p) = queue.pop_front() {
        if all.contains(&p) {
            continue;
        }
        all.push(p.clone());
        for (i, w) in refl.iter().enumerate() {
            let _ = i;
            // coroot transforms by w, root by w^T (precomposition)
            let new_coroot = w.mul_vec(&p.coroot);
            let wt = w.transpose();
            let new_root = wt.mul_vec(&p.root);
            queue.push_back(RootPair { root: new_root, coroot: new_coroot });
        }
    }
    for p in all {
        // positive iff the coroot has nonnegative coordinates in the
        // simple-coroot basis
        if let Some(coords) = d.coroot_coords(&p.coroot) {
            if coords.iter().all(|c| !c.is_negative()) && coords.iter().any(|c| c.is_positive()) {
                if !seen.contains(&p) {
                    seen.push(p);
                }
            }
        }
    }
    seen.sort_by_key(|p| {
        let coords = d.coroot_coords(&p.coroot).unwrap();
        let ht: Int = coords.iter().sum();
        (ht, format!("{:?}", coords))
    });
    seen
}

/// An element of the Weyl group with its matrix on Y and a reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: IntMatrix,
    /// reduced word in simple-reflection indices; word[0] acts first
    pub word: Vec<usize>,
    pub length: usize,
}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        WeylElement { matrix: IntMatrix::identity(dim), word: vec![], length: 0 }
    }

    /// Build from a word, verifying it is reduced (its length equals the
    /// number of positive coroots sent negative).
    pub fn from_word(d: &RootDatum, word: &[usize]) -> Result<Self, String> {
        let mut m = IntMatrix::identity(d.dim);
        for &i in word {
            m = d.reflection_matrix(i).mul(&m);
        }
        let len = inversion_count(d, &m);
        if len != word.len() {
            return Err(format!("word {:?} is not reduced (length {})", word, len));
        }
        Ok(WeylElement { matrix: m, word: word.to_vec(), length: len })
    }

    pub fn inverse(&self, d: &RootDatum) -> WeylElement {
        let mut word: Vec<usize> = self.word.clone();
        word.reverse();
        WeylElement::from_word(d, &word).expect("inverse of reduced word is reduced")
    }
}

/// Number of positive coroots sent negative by the matrix.
pub fn inversion_count(d: &RootDatum, m: &IntMatrix) -> usize {
    d.positive_pairs()
        .iter()
        .filter(|p| {
            let img = m.mul_vec(&p.coroot);
            match d.coroot_coords(&img) {
                Some(coords) => coords.iter().any(|c| c.is_negative()),
                None => false,
            }
        })
        .count()
}

/// The set of positive roots sent negative by w (returned as root pairs).
pub fn inversion_set(d: &RootDatum, w: &WeylElement) -> Vec<RootPair> {
    d.positive_pairs()
        .iter()
        .filter(|p| {
            let img = w.matrix.mul_vec(&p.coroot);
            match d.coroot_coords(&img) {
                Some(coords) => coords.iter().any(|c| c.is_negative()),
                None => false,
            }
        })
        .cloned()
        .collect()
}

/// BFS enumeration of the Weyl group; every element carries the
/// lexicographically smallest reduced word. Errors out above `cap`.
pub fn weyl_group(d: &RootDatum, cap: usize) -> Result<Vec<WeylElement>, RootDataError> {
    let mut elements: Vec<WeylElement> = Vec::new();
    let mut index: HashMap<Vec<Int>, usize> = HashMap::new();
    let key = |m: &IntMatrix| -> Vec<Int> {
        let mut v = Vec::with_capacity(d.dim * d.dim);
        for i in 0..d.dim {
            for j in 0..d.dim {
                v.push(m[(i, j)].clone());
            }
        }
        v
    };
    let refl: Vec<IntMatrix> = (0..d.num_simple()).map(|i| d.reflection_matrix(i)).collect();
    let id = WeylElement::identity(d.dim);
    index.insert(key(&id.matrix), 0);
    elements.push(id);
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &ei in &frontier {
            let (word, matrix) = (elements[ei].word.clone(), elements[ei].matrix.clone());
            for (i, r) in refl.iter().enumerate() {
                let m2 = r.mul(&matrix);
                let k = key(&m2);
                if index.contains_key(&k) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(RootDataError::CapExceeded(cap));
                }
                let mut w2 = word.clone();
                w2.push(i);
                let len = w2.len();
                index.insert(k, elements.len());
                next.push(elements.len());
                elements.push(WeylElement { matrix: m2, word: w2, length: len });
            }
        }
        frontier = next;
    }
    Ok(elements)
}

/// The longest element of the (enumerated) Weyl group.
pub fn longest_element(elements: &[WeylElement]) -> &WeylElement {
    elements.iter().max_by_key(|w| w.length).unwrap()
}

/// Positive system summary: positive coroots, rho, and the sum of positive
/// roots as a functional.
pub fn positive_system(d: &RootDatum) -> (Vec<Vec<Int>>, Vec<Rat>, Vec<Int>) {
    (d.positive_coroots(), d.rho().to_vec(), d.two_rho_x().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn sc(family: Family, rank: usize) -> RootDatum {
        build_root_datum(RootLabel::SimplyConnected { family, rank }).unwrap()
    }

    #[test]
    fn sl2_basics() {
        let d = sc(Family::A, 1);
        assert_eq!(d.positive_pairs().len(), 1);
        assert_eq!(d.rho(), &[rat(1, 2)]);
        let w = weyl_group(&d, 100).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(longest_element(&w).length, 1);
    }

    #[test]
    fn spin_odd_coroots() {
        // Spin_{2r+1} = B_r sc: alpha_r^vee = 2 e_r in the SO model
        let d = build_root_datum(RootLabel::SoOdd { rank: 3 }).unwrap();
        assert_eq!(d.simple_coroot(2), vec![int(0), int(0), int(2)]);
        assert_eq!(d.positive_pairs().len(), 9); // r^2 positive roots
    }

    #[test]
    fn gl2_coroot() {
        let d = build_root_datum(RootLabel::Gl { rank: 2 }).unwrap();
        assert_eq!(d.simple_coroot(0), vec![int(1), int(-1)]);
        assert_eq!(d.num_simple(), 1);
    }

    #[test]
    fn rho_pairs_to_one() {
        for d in [
            sc(Family::A, 3),
            sc(Family::B, 3),
            sc(Family::C, 2),
            sc(Family::D, 4),
            sc(Family::G2, 2),
            sc(Family::F4, 4),
            build_root_datum(RootLabel::SoOdd { rank: 3 }).unwrap(),
            build_root_datum(RootLabel::Gl { rank: 3 }).unwrap(),
        ] {
            for i in 0..d.num_simple() {
                assert_eq!(d.pair_simple_rat(i, d.rho()), rat(1, 1), "{} i={}", d.label, i);
            }
        }
    }

    #[test]
    fn positive_counts() {
        assert_eq!(sc(Family::A, 4).positive_pairs().len(), 10);
        assert_eq!(sc(Family::B, 3).positive_pairs().len(), 9);
        assert_eq!(sc(Family::C, 2).positive_pairs().len(), 4);
        assert_eq!(sc(Family::D, 4).positive_pairs().len(), 12);
        assert_eq!(sc(Family::G2, 2).positive_pairs().len(), 6);
        assert_eq!(sc(Family::F4, 4).positive_pairs().len(), 24);
        assert_eq!(sc(Family::E6, 6).positive_pairs().len(), 36);
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_group(&sc(Family::C, 2), 100).unwrap().len(), 8);
        assert_eq!(weyl_group(&sc(Family::G2, 2), 100).unwrap().len(), 12);
        assert_eq!(weyl_group(&sc(Family::A, 3), 100).unwrap().len(), 24);
        let sp4 = weyl_group(&sc(Family::C, 2), 100).unwrap();
        assert_eq!(longest_element(&sp4).length, 4);
        let g2 = weyl_group(&sc(Family::G2, 2), 100).unwrap();
        assert_eq!(longest_element(&g2).length, 6);
    }

    #[test]
    fn cap_exceeded() {
        assert!(matches!(weyl_group(&sc(Family::A, 3), 10), Err(RootDataError::CapExceeded(_))));
    }

    #[test]
    fn reflections_are_involutions_and_braid() {
        for d in [sc(Family::B, 3), sc(Family::G2, 2), sc(Family::F4, 4)] {
            let n = d.num_simple();
            for i in 0..n {
                let r = d.reflection_matrix(i);
                assert_eq!(r.mul(&r), IntMatrix::identity(d.dim));
            }
            for i in 0..n {
                for j in i + 1..n {
                    let prod = d.cartan[i][j] * d.cartan[j][i];
                    let m = match prod {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        _ => panic!(),
                    };
                    let ri = d.reflection_matrix(i);
                    let rj = d.reflection_matrix(j);
                    let mut p = IntMatrix::identity(d.dim);
                    for _ in 0..m {
                        p = p.mul(&ri).mul(&rj);
                    }
                    // (ri rj)^m = 1
                    assert_eq!(p, IntMatrix::identity(d.dim), "braid {} {} in {}", i, j, d.label);
                }
            }
        }
    }

    #[test]
    fn length_equals_inversions() {
        let d = sc(Family::C, 2);
        for w in weyl_group(&d, 100).unwrap() {
            assert_eq!(w.length, inversion_count(&d, &w.matrix));
        }
    }

    #[test]
    fn from_word_rejects_non_reduced() {
        let d = sc(Family::A, 1);
        assert!(WeylElement::from_word(&d, &[0, 0]).is_err());
        assert!(WeylElement::from_word(&d, &[0]).is_ok());
    }
}
