//! Symbolic matrices labeled by coset representatives, with exact
//! fraction-free determinants.

use super::ring::{RingRef, SymExpr, SymPoly};
use crate::exactlin::Int;
use std::fmt;

/// Square matrix of symbolic expressions; row/column labels are ordered
/// coset representatives.
#[derive(Clone)]
pub struct SymMatrix {
    pub ring: RingRef,
    pub dim: usize,
    pub labels: Vec<Vec<Int>>,
    entries: Vec<SymExpr>,
}

impl SymMatrix {
    pub fn zero(ring: &RingRef, labels: Vec<Vec<Int>>) -> SymMatrix {
        let dim = labels.len();
        SymMatrix {
            ring: ring.clone(),
            dim,
            labels,
            entries: vec![SymExpr::zero(ring); dim * dim],
        }
    }

    pub fn identity(ring: &RingRef, labels: Vec<Vec<Int>>) -> SymMatrix {
        let mut m = Self::zero(ring, labels);
        for i in 0..m.dim {
            *m.at_mut(i, i) = SymExpr::one(ring);
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &SymExpr {
        &self.entries[i * self.dim + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut SymExpr {
        &mut self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(&self.ring, self.labels.clone());
        for i in 0..self.dim {
            for k in 0..self.dim {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    if other.at(k, j).is_zero() {
                        continue;
                    }
                    let p = self.at(i, k).mul(other.at(k, j));
                    let cur = out.at(i, j).add(&p);
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &SymExpr) -> SymMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.mul(s);
        }
        out
    }

    pub fn equals(&self, other: &SymMatrix) -> bool {
        self.dim == other.dim
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.equals(b))
    }

    pub fn trace(&self) -> SymExpr {
        let mut t = SymExpr::zero(&self.ring);
        for i in 0..self.dim {
            t = t.add(self.at(i, i));
        }
        t
    }

    pub fn is_identity_times(&self, s: &SymExpr) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let expect = if i == j { s.clone() } else { SymExpr::zero(&self.ring) };
                if !self.at(i, j).equals(&expect) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant. Rows are cleared of denominators first, then a
    /// fraction-free Bareiss elimination runs over the polynomial ring with
    /// Markowitz pivoting; matrices containing the sign symbol omega are
    /// evaluated at omega = +1 and -1 and recombined.
    pub fn det(&self) -> SymExpr {
        let ring = &self.ring;
        let mut rows: Vec<Vec<SymPoly>> = Vec::with_capacity(self.dim);
        let mut cleared = SymExpr::one(ring);
        for i in 0..self.dim {
            // product of the denominators of the row
            let mut dens: Vec<&SymPoly> = Vec::new();
            for j in 0..self.dim {
                let d = &self.at(i, j).den;
                if !d.is_one() {
                    dens.push(d);
                }
            }
            let mut row_den = SymPoly::one(ring);
            for d in &dens {
                row_den = row_den.mul(d);
            }
            let mut row: Vec<SymPoly> = Vec::with_capacity(self.dim);
            for j in 0..self.dim {
                let e = self.at(i, j);
                if e.is_zero() {
                    row.push(SymPoly::zero(ring));
                    continue;
                }
                // numerator times the product of the other denominators:
                // of the k occurrences equal to this entry's denominator,
                // keep k - 1
                let mut v = e.num.clone();
                let mut skipped_own = false;
                for d in &dens {
                    if !skipped_own && *d == &e.den {
                        skipped_own = true;
                        continue;
                    }
                    v = v.mul(d);
                }
                row.push(v);
            }
            cleared = cleared.mul(&SymExpr::from_poly(row_den));
            rows.push(row);
        }
        let has_omega = rows.iter().flatten().any(|p| p.has_omega());
        let det_poly = if has_omega {
            let plus = bareiss(rows.iter().map(|r| r.iter().map(|p| p.subst_omega(1)).collect()).collect(), ring);
            let minus = bareiss(rows.iter().map(|r| r.iter().map(|p| p.subst_omega(-1)).collect()).collect(), ring);
            // det = (plus + minus)/2 + omega (plus - minus)/2
            let half = ring.field.from_rat(crate::exactlin::rat(1, 2));
            let sym = plus.add(&minus).scale(&half);
            let anti = plus.sub(&minus).scale(&half);
            let om = super::ring::Mono { exps: vec![0; ring.width()], om: true };
            sym.add(&anti.mul_mono(&om, &ring.field.one()))
        } else {
            bareiss(rows, ring)
        };
        SymExpr::from_poly(det_poly).div(&cleared)
    }

    pub fn render(&self, latex: bool) -> String {
        if latex {
            let mut s = String::from("\\begin{bmatrix}\n");
            for i in 0..self.dim {
                let row: Vec<String> = (0..self.dim).map(|j| self.at(i, j).render(true)).collect();
                s.push_str(&row.join(" & "));
                s.push_str(" \\\\\n");
            }
            s.push_str("\\end{bmatrix}");
            s
        } else {
            let mut s = String::new();
            for i in 0..self.dim {
                let row: Vec<String> = (0..self.dim).map(|j| self.at(i, j).render(false)).collect();
                s.push_str(&format!("[ {} ]\n", row.join(" , ")));
            }
            s
        }
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

/// Fraction-free Bareiss determinant over the polynomial ring with full
/// (Markowitz) pivoting; divisions are exact by Sylvester's identity.
fn bareiss(mut m: Vec<Vec<SymPoly>>, ring: &RingRef) -> SymPoly {
    let n = m.len();
    if n == 0 {
        return SymPoly::one(ring);
    }
    let mut sign = false;
    let mut prev = SymPoly::one(ring);
    for k in 0..n - 1 {
        // Markowitz pivot choice in the remaining submatrix
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if m[i][j].is_zero() {
                    continue;
                }
                let rc = (k..n).filter(|&c| !m[i][c].is_zero()).count() - 1;
                let cc = (k..n).filter(|&r| !m[r][j].is_zero()).count() - 1;
                let cost = rc * cc * 1000 + m[i][j].num_terms();
                if best.map(|(_, _, c)| cost < c).unwrap_or(true) {
                    best = Some((i, j, cost));
                }
            }
        }
        let (pi, pj) = match best {
            Some((i, j, _)) => (i, j),
            None => return SymPoly::zero(ring),
        };
        if pi != k {
            m.swap(k, pi);
            sign = !sign;
        }
        if pj != k {
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            sign = !sign;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                // still need the Bareiss update when m[i][k] = 0? the
                // formula reduces to m[k][k] m[i][j] / prev
                for j in k + 1..n {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    let num = m[k][k].mul(&m[i][j]);
                    m[i][j] = num.exact_div(&prev);
                }
                continue;
            }
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = SymPoly::zero(ring);
        }
        prev = m[k][k].clone();
        if prev.is_zero() {
            return SymPoly::zero(ring);
        }
    }
    let out = m[n - 1][n - 1].clone();
    if sign {
        out.neg()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::symlcm::ring::{Gens, Ring};

    #[test]
    fn det_2x2_with_fractions() {
        let ring = Ring::new(3, 1, 1);
        let g = Gens::new(&ring);
        let t = g.t_mono(&[1]);
        let labels = vec![vec![int(0)], vec![int(1)]];
        let mut m = SymMatrix::zero(&ring, labels);
        // [[(1-Qi)/(1-t), g1],[g2, (1-Qi) t/(1-t)]]
        let tau1 = g.one_minus(&g.qi(1)).div(&g.one_minus(&t));
        *m.at_mut(0, 0) = tau1.clone();
        *m.at_mut(0, 1) = g.gauss(-1);
        *m.at_mut(1, 0) = g.gauss(1);
        *m.at_mut(1, 1) = tau1.mul(&t);
        let det = m.det();
        // det = (1-Qi)^2 t/(1-t)^2 - Qi  (g1 g2 = Qi)
        let expect = g
            .one_minus(&g.qi(1))
            .pow(2)
            .mul(&t)
            .div(&g.one_minus(&t).pow(2))
            .sub(&g.qi(1));
        assert!(det.equals(&expect));
    }

    #[test]
    fn det_permutation_with_monomials() {
        let ring = Ring::torus(1);
        let g = Gens::new(&ring);
        let t = g.t_mono(&[1]);
        let labels = vec![vec![int(0)], vec![int(1)], vec![int(2)]];
        let mut m = SymMatrix::zero(&ring, labels);
        *m.at_mut(0, 0) = g.one();
        *m.at_mut(1, 2) = t.clone();
        *m.at_mut(2, 1) = t.inv();
        let det = m.det();
        assert!(det.equals(&g.one().neg()));
    }

    #[test]
    fn det_with_omega() {
        let ring = Ring::new(2, 1, 1);
        let g = Gens::new(&ring);
        let om = g.omega();
        let labels = vec![vec![int(0)], vec![int(1)]];
        let mut m = SymMatrix::zero(&ring, labels.clone());
        *m.at_mut(0, 0) = g.one().add(&om.mul(&g.r()).mul(&g.qi(1)));
        *m.at_mut(0, 1) = g.qi(1);
        *m.at_mut(1, 0) = g.qi(2);
        *m.at_mut(1, 1) = g.one().sub(&om.mul(&g.r()).mul(&g.qi(1)));
        let det = m.det();
        // (1 + om R Qi)(1 - om R Qi) - Qi^3 = 1 - Qi - Qi^3
        let expect = g.one().sub(&g.qi(1)).sub(&g.qi(3));
        assert!(det.equals(&expect));
    }

    #[test]
    fn trace_and_product() {
        let ring = Ring::torus(1);
        let g = Gens::new(&ring);
        let t = g.t_mono(&[1]);
        let labels = vec![vec![int(0)], vec![int(1)]];
        let mut a = SymMatrix::zero(&ring, labels.clone());
        *a.at_mut(0, 1) = t.clone();
        *a.at_mut(1, 0) = t.inv();
        let prod = a.mul(&a);
        assert!(prod.is_identity_times(&g.one()));
        assert!(a.trace().is_zero());
    }
}
