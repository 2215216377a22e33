//! The exact symbolic ring: rational functions in q^{-1} (Qi), the formal
//! square root R (R^2 q^{-1} = 1), torus indeterminates t_i, the variables
//! Z = q^{-s} and x = chi(w) of the GL(2) sections, Gauss-sum symbols g_k,
//! epsilon symbols E_k, and the sign symbol omega (omega^2 = 1).
//!
//! All multiplicative relations are folded into unit identifications, so a
//! monomial is an integer exponent vector plus one omega bit:
//!
//!   - the exponent of q^{1/2} is a single integer v (Qi = v - 2, R = v + 1);
//!   - g_k with k = 0 mod n is the scalar -q^{-1}; k = n/2 is q^{-1/2} omega;
//!     k in the upper half is q^{-1} g_{n-k}^{-1};
//!   - E_k with k = 0 mod n is 1; k = n/2 is q^{s - 1/2} x^{-1} omega; upper
//!     half is q^{1-2s} x^{-2} E_{n-k}^{-1}.
//!
//! Coefficients live in Q(zeta_N). Expressions are reduced fractions with
//! omega-free denominators; equality is decided by cross multiplication.

use super::cyclotomic::{Cyc, CycField};
use crate::exactlin::{Int, Rat};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Ring shape descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub field: Arc<CycField>,
    /// cover degree governing g/E index arithmetic (0 when unused)
    pub n: u64,
    pub num_t: usize,
    pub g_slots: usize,
    pub e_slots: usize,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(n: u64, num_t: usize, zeta_order: u32) -> RingRef {
        let half = if n == 0 { 0 } else { ((n - 1) / 2) as usize };
        Arc::new(Ring {
            field: CycField::new(zeta_order),
            n,
            num_t,
            g_slots: half,
            e_slots: half,
        })
    }

    /// Plain ring with only torus variables.
    pub fn torus(num_t: usize) -> RingRef {
        Self::new(0, num_t, 1)
    }

    pub fn width(&self) -> usize {
        3 + self.num_t + self.g_slots + self.e_slots
    }

    pub const V: usize = 0; // exponent of q^{1/2}
    pub const Z: usize = 1; // exponent of q^{-s}
    pub const X: usize = 2; // exponent of chi(varpi)

    pub fn t_off(&self) -> usize {
        3
    }
    pub fn g_off(&self) -> usize {
        3 + self.num_t
    }
    pub fn e_off(&self) -> usize {
        3 + self.num_t + self.g_slots
    }
}

/// A monomial: exponent vector plus the omega bit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub exps: Vec<i64>,
    pub om: bool,
}

impl Mono {
    pub fn one(ring: &Ring) -> Mono {
        Mono { exps: vec![0; ring.width()], om: false }
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            om: self.om ^ other.om,
        }
    }

    pub fn inv(&self) -> Mono {
        Mono { exps: self.exps.iter().map(|a| -a).collect(), om: self.om }
    }

    fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }
}

/// Exact multivariate Laurent polynomial over Q(zeta).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    pub ring: RingRef,
    pub terms: BTreeMap<Mono, Cyc>,
}

impl SymPoly {
    pub fn zero(ring: &RingRef) -> SymPoly {
        SymPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &RingRef) -> SymPoly {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &RingRef, c: Cyc) -> SymPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(ring), c);
        }
        SymPoly { ring: ring.clone(), terms }
    }

    pub fn from_mono(ring: &RingRef, m: Mono, c: Cyc) -> SymPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SymPoly { ring: ring.clone(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::one(&self.ring))
                .map(|c| *c == self.ring.field.one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let f = &self.ring.field;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v = f.add(v, c);
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        SymPoly { ring: self.ring.clone(), terms }
    }

    pub fn neg(&self) -> SymPoly {
        let f = &self.ring.field;
        SymPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let f = &self.ring.field;
        let mut terms: BTreeMap<Mono, Cyc> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = f.mul(c1, c2);
                match terms.get_mut(&m) {
                    Some(v) => {
                        *v = f.add(v, &c);
                        if v.is_zero() {
                            terms.remove(&m);
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            terms.insert(m, c);
                        }
                    }
                }
            }
        }
        SymPoly { ring: self.ring.clone(), terms }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Cyc) -> SymPoly {
        let f = &self.ring.field;
        SymPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m1, c1)| (m1.mul(m), f.mul(c1, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Cyc) -> SymPoly {
        self.mul_mono(&Mono::one(&self.ring), c)
    }

    pub fn leading(&self) -> Option<(&Mono, &Cyc)> {
        self.terms.iter().next_back()
    }

    /// Substitute omega -> sign (+1 or -1).
    pub fn subst_omega(&self, sign: i8) -> SymPoly {
        let f = &self.ring.field;
        let mut terms: BTreeMap<Mono, Cyc> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.om = false;
            let c2 = if m.om && sign < 0 { f.neg(c) } else { c.clone() };
            match terms.get_mut(&m2) {
                Some(v) => {
                    *v = f.add(v, &c2);
                    if v.is_zero() {
                        terms.remove(&m2);
                    }
                }
                None => {
                    if !c2.is_zero() {
                        terms.insert(m2, c2);
                    }
                }
            }
        }
        SymPoly { ring: self.ring.clone(), terms }
    }

    pub fn has_omega(&self) -> bool {
        self.terms.keys().any(|m| m.om)
    }

    /// omega-conjugate: a + b omega -> a - b omega.
    pub fn conj_omega(&self) -> SymPoly {
        let f = &self.ring.field;
        SymPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), if m.om { f.neg(c) } else { c.clone() }))
                .collect(),
        }
    }

    fn omega_parts(&self) -> (SymPoly, SymPoly) {
        let mut a = SymPoly::zero(&self.ring);
        let mut b = SymPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.om = false;
            if m.om {
                b.terms.insert(m2, c.clone());
            } else {
                a.terms.insert(m2, c.clone());
            }
        }
        (a, b)
    }

    /// Exact division; None when the division is not exact.
    pub fn try_exact_div(&self, divisor: &SymPoly) -> Option<SymPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(SymPoly::zero(&self.ring));
        }
        if divisor.has_omega() {
            let conj = divisor.conj_omega();
            let den = divisor.mul(&conj);
            if den.is_zero() {
                // zero divisor; fall back to evaluation at both signs is
                // the caller's responsibility
                return None;
            }
            return self.mul(&conj).try_exact_div(&den);
        }
        if self.has_omega() {
            let (a, b) = self.omega_parts();
            let qa = a.try_exact_div(divisor)?;
            let qb = b.try_exact_div(divisor)?;
            let omega = Mono { exps: vec![0; self.ring.width()], om: true };
            return Some(qa.add(&qb.mul_mono(&omega, &self.ring.field.one())));
        }
        // shift both to ordinary polynomials (nonnegative exponents)
        let w = self.ring.width();
        let lowdeg = |p: &SymPoly| -> Vec<i64> {
            let mut low = vec![i64::MAX; w];
            for m in p.terms.keys() {
                for (i, e) in m.exps.iter().enumerate() {
                    low[i] = low[i].min(*e);
                }
            }
            low
        };
        let lf = lowdeg(self);
        let lg = lowdeg(divisor);
        let shift = |p: &SymPoly, s: &[i64]| -> SymPoly {
            let m = Mono { exps: s.iter().map(|x| -x).collect(), om: false };
            p.mul_mono(&m, &p.ring.field.one())
        };
        let mut f = shift(self, &lf);
        let g = shift(divisor, &lg);
        let f_ring = self.ring.field.clone();
        let (gm, gc) = {
            let (m, c) = g.leading().unwrap();
            (m.clone(), c.clone())
        };
        let gc_inv = f_ring.inv(&gc);
        let mut q = SymPoly::zero(&self.ring);
        while !f.is_zero() {
            let (fm, fc) = {
                let (m, c) = f.leading().unwrap();
                (m.clone(), c.clone())
            };
            if !gm.divides(&fm) {
                return None;
            }
            let qm = Mono { exps: fm.exps.iter().zip(&gm.exps).map(|(a, b)| a - b).collect(), om: false };
            let qc = f_ring.mul(&fc, &gc_inv);
            q.terms.insert(qm.clone(), qc.clone());
            f = f.sub(&g.mul_mono(&qm, &qc));
        }
        // undo the shift: quotient gains lf - lg
        let back = Mono { exps: lf.iter().zip(&lg).map(|(a, b)| a - b).collect(), om: false };
        Some(q.mul_mono(&back, &self.ring.field.one()))
    }

    pub fn exact_div(&self, divisor: &SymPoly) -> SymPoly {
        self.try_exact_div(divisor).expect("division is not exact")
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let ring = &self.ring;
        let mut parts = Vec::new();
        // highest term first for readability
        for (m, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            let v = m.exps[Ring::V];
            let qi_pow = -(v.div_euclid(2));
            let has_r = v.rem_euclid(2) == 1;
            let name = |base: &str, e: i64| -> Option<String> {
                if e == 0 {
                    None
                } else if e == 1 {
                    Some(base.to_string())
                } else if latex {
                    Some(format!("{}^{{{}}}", base, e))
                } else {
                    Some(format!("{}^{}", base, e))
                }
            };
            if let Some(s) = name(if latex { "q^{-1}" } else { "Qi" }, qi_pow) {
                factors.push(if latex && qi_pow != 1 { format!("q^{{{}}}", -qi_pow) } else { s });
            }
            if has_r {
                factors.push("R".into());
            }
            if m.om {
                factors.push(if latex { "\\omega".into() } else { "om".into() });
            }
            if let Some(s) = name("Z", m.exps[Ring::Z]) {
                factors.push(s);
            }
            if let Some(s) = name("x", m.exps[Ring::X]) {
                factors.push(s);
            }
            for i in 0..ring.num_t {
                if let Some(s) = name(&format!("t{}", i + 1), m.exps[ring.t_off() + i]) {
                    factors.push(s);
                }
            }
            for i in 0..ring.g_slots {
                let base = if latex {
                    format!("\\mathbf{{g}}_{{{}}}", i + 1)
                } else {
                    format!("g{}", i + 1)
                };
                if let Some(s) = name(&base, m.exps[ring.g_off() + i]) {
                    factors.push(s);
                }
            }
            for i in 0..ring.e_slots {
                let base = if latex { format!("E_{{{}}}", i + 1) } else { format!("E{}", i + 1) };
                if let Some(s) = name(&base, m.exps[ring.e_off() + i]) {
                    factors.push(s);
                }
            }
            let coeff = format!("{}", c);
            let body = factors.join(if latex { " " } else { "*" });
            let part = if factors.is_empty() {
                coeff
            } else if coeff == "1" {
                body
            } else if coeff == "-1" {
                format!("-{}", body)
            } else {
                format!("{}{}{}", coeff, if latex { " " } else { "*" }, body)
            };
            parts.push(part);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

/// A reduced fraction of two polynomials; the denominator is nonzero,
/// omega-free, and normalized to leading coefficient 1 and leading
/// monomial 1.
#[derive(Debug, Clone)]
pub struct SymExpr {
    pub num: SymPoly,
    pub den: SymPoly,
}

impl SymExpr {
    pub fn from_poly(p: SymPoly) -> SymExpr {
        let one = SymPoly::one(&p.ring);
        SymExpr { num: p, den: one }
    }

    pub fn zero(ring: &RingRef) -> SymExpr {
        Self::from_poly(SymPoly::zero(ring))
    }

    pub fn one(ring: &RingRef) -> SymExpr {
        Self::from_poly(SymPoly::one(ring))
    }

    pub fn ring(&self) -> &RingRef {
        &self.num.ring
    }

    pub fn new(num: SymPoly, den: SymPoly) -> SymExpr {
        let mut e = SymExpr { num, den };
        e.normalize();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        assert!(!self.den.is_zero(), "zero denominator");
        if self.num.is_zero() {
            self.den = SymPoly::one(&self.den.ring);
            return;
        }
        if self.den.has_omega() {
            let conj = self.den.conj_omega();
            self.num = self.num.mul(&conj);
            self.den = self.den.mul(&conj);
            assert!(!self.den.is_zero(), "omega-degenerate denominator");
        }
        // full cancellation if the denominator divides the numerator
        if !self.den.is_one() {
            if let Some(q) = self.num.try_exact_div(&self.den) {
                self.num = q;
                self.den = SymPoly::one(&self.den.ring);
            }
        }
        // unit normalization: the lex-least term of den becomes 1
        let (lm, lc) = {
            let (m, c) = self.den.terms.iter().next().unwrap();
            (m.inv(), self.den.ring.field.inv(c))
        };
        self.num = self.num.mul_mono(&lm, &lc);
        self.den = self.den.mul_mono(&lm, &lc);
    }

    pub fn add(&self, other: &SymExpr) -> SymExpr {
        if self.den == other.den {
            return SymExpr::new(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        SymExpr::new(num, den)
    }

    pub fn sub(&self, other: &SymExpr) -> SymExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymExpr {
        SymExpr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &SymExpr) -> SymExpr {
        SymExpr::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> SymExpr {
        assert!(!self.num.is_zero(), "inverting zero");
        SymExpr::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &SymExpr) -> SymExpr {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> SymExpr {
        if k == 0 {
            return SymExpr::one(self.ring());
        }
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = SymExpr::one(self.ring());
        for _ in 0..k.abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Equality as rational functions, by cross multiplication of normal
    /// forms.
    pub fn equals(&self, other: &SymExpr) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn subst_omega(&self, sign: i8) -> SymExpr {
        SymExpr::new(self.num.subst_omega(sign), self.den.subst_omega(sign))
    }

    pub fn has_omega(&self) -> bool {
        self.num.has_omega() || self.den.has_omega()
    }

    pub fn render(&self, latex: bool) -> String {
        if self.den.is_one() {
            self.num.render(latex)
        } else if latex {
            format!("\\frac{{{}}}{{{}}}", self.num.render(true), self.den.render(true))
        } else {
            format!("({})/({})", self.num.render(false), self.den.render(false))
        }
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

/// Convenience builders on the ring.
pub struct Gens {
    pub ring: RingRef,
}

impl Gens {
    pub fn new(ring: &RingRef) -> Gens {
        Gens { ring: ring.clone() }
    }

    fn mono(&self) -> Mono {
        Mono::one(&self.ring)
    }

    pub fn poly_of(&self, m: Mono) -> SymPoly {
        SymPoly::from_mono(&self.ring, m, self.ring.field.one())
    }

    pub fn expr_of(&self, m: Mono) -> SymExpr {
        SymExpr::from_poly(self.poly_of(m))
    }

    pub fn one(&self) -> SymExpr {
        SymExpr::one(&self.ring)
    }

    pub fn zero(&self) -> SymExpr {
        SymExpr::zero(&self.ring)
    }

    pub fn rational(&self, n: i64, d: i64) -> SymExpr {
        SymExpr::from_poly(SymPoly::constant(
            &self.ring,
            self.ring.field.from_rat(Rat::new(Int::from(n), Int::from(d))),
        ))
    }

    pub fn zeta(&self, k: i64) -> SymExpr {
        SymExpr::from_poly(SymPoly::constant(&self.ring, self.ring.field.zeta_pow(k)))
    }

    /// q^{-k}
    pub fn qi(&self, k: i64) -> SymExpr {
        let mut m = self.mono();
        m.exps[Ring::V] = -2 * k;
        self.expr_of(m)
    }

    /// the formal square root R with R^2 = q
    pub fn r(&self) -> SymExpr {
        let mut m = self.mono();
        m.exps[Ring::V] = 1;
        self.expr_of(m)
    }

    pub fn omega(&self) -> SymExpr {
        let mut m = self.mono();
        m.om = true;
        self.expr_of(m)
    }

    /// Z^k = q^{-ks}
    pub fn z(&self, k: i64) -> SymExpr {
        let mut m = self.mono();
        m.exps[Ring::Z] = k;
        self.expr_of(m)
    }

    /// x^k = chi(varpi)^k
    pub fn x(&self, k: i64) -> SymExpr {
        let mut m = self.mono();
        m.exps[Ring::X] = k;
        self.expr_of(m)
    }

    /// torus monomial t^{c}
    pub fn t_mono(&self, exps: &[i64]) -> SymExpr {
        assert_eq!(exps.len(), self.ring.num_t);
        let mut m = self.mono();
        for (i, e) in exps.iter().enumerate() {
            m.exps[self.ring.t_off() + i] = *e;
        }
        self.expr_of(m)
    }

    /// Gauss-sum symbol g_k (index mod n), with all special identifications
    /// applied: g_0 = -q^{-1}, g_{n/2} = q^{-1/2} omega,
    /// g_k = q^{-1} g_{n-k}^{-1} for k in the upper half.
    pub fn gauss(&self, k: i64) -> SymExpr {
        let n = self.ring.n as i64;
        assert!(n > 0, "ring has no Gauss symbols");
        let k = k.rem_euclid(n);
        let mut m = self.mono();
        if k == 0 {
            m.exps[Ring::V] = -2;
            return SymExpr::from_poly(
                self.poly_of(m).neg(),
            );
        }
        if n % 2 == 0 && k == n / 2 {
            m.exps[Ring::V] = -1;
            m.om = true;
            return self.expr_of(m);
        }
        let half = self.ring.g_slots as i64;
        if k <= half {
            m.exps[self.ring.g_off() + (k - 1) as usize] = 1;
        } else {
            m.exps[self.ring.g_off() + (n - k - 1) as usize] = -1;
            m.exps[Ring::V] = -2;
        }
        self.expr_of(m)
    }

    /// Epsilon symbol E_k encoding eps(1 - s, chi^{-1} eta_{varpi}^k, psi)
    /// for unramified chi in the 4|n sections: E_0 = 1,
    /// E_{n/2} = q^{s-1/2} x^{-1} omega, E_k E_{n-k} = q^{2s-1} x^{-2}.
    pub fn eps(&self, k: i64) -> SymExpr {
        let n = self.ring.n as i64;
        assert!(n > 0, "ring has no epsilon symbols");
        let k = k.rem_euclid(n);
        let mut m = self.mono();
        if k == 0 {
            return self.one();
        }
        if n % 2 == 0 && k == n / 2 {
            m.exps[Ring::V] = -1;
            m.exps[Ring::Z] = -1;
            m.exps[Ring::X] = -1;
            m.om = true;
            return self.expr_of(m);
        }
        let half = self.ring.e_slots as i64;
        if k <= half {
            m.exps[self.ring.e_off() + (k - 1) as usize] = 1;
        } else {
            m.exps[self.ring.e_off() + (n - k - 1) as usize] = -1;
            m.exps[Ring::V] = -2;
            m.exps[Ring::Z] = -2;
            m.exps[Ring::X] = -2;
        }
        self.expr_of(m)
    }

    /// 1 - e
    pub fn one_minus(&self, e: &SymExpr) -> SymExpr {
        self.one().sub(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(n: u64, t: usize) -> Gens {
        Gens::new(&Ring::new(n, t, 1))
    }

    #[test]
    fn gauss_pair_reduction() {
        // g_k g_{n-k} = q^{-1} for every k, including the special index
        for n in [2u64, 3, 4, 5, 6, 8] {
            let g = gens(n, 1);
            for k in 1..n as i64 {
                let prod = g.gauss(k).mul(&g.gauss(n as i64 - k));
                assert!(prod.equals(&g.qi(1)), "n={} k={}", n, k);
            }
            // and against arbitrary monomial multipliers (confluence)
            let m = g.t_mono(&[3]).mul(&g.qi(-2));
            for k in 1..n as i64 {
                let lhs = g.gauss(k).mul(&g.gauss(n as i64 - k)).mul(&m);
                let rhs = g.qi(1).mul(&m);
                assert!(lhs.equals(&rhs));
            }
        }
    }

    #[test]
    fn gauss_special_values() {
        let g = gens(4, 0);
        // g_2 = q^{-1/2} omega; square = q^{-1}
        let g2 = g.gauss(2);
        assert!(g2.mul(&g2).equals(&g.qi(1)));
        // g_0 = -q^{-1}
        assert!(g.gauss(0).equals(&g.qi(1).neg()));
        assert!(g.gauss(4).equals(&g.qi(1).neg()));
    }

    #[test]
    fn r_squared_is_q() {
        let g = gens(0, 0);
        let r = g.r();
        assert!(r.mul(&r).equals(&g.qi(-1)));
        // R * Qi * R = 1... R^2 Qi = 1
        assert!(r.mul(&r).mul(&g.qi(1)).equals(&g.one()));
    }

    #[test]
    fn omega_square_is_one() {
        let g = gens(0, 0);
        let om = g.omega();
        assert!(om.mul(&om).equals(&g.one()));
    }

    #[test]
    fn eps_pair_reduction() {
        let g = gens(8, 0);
        for k in 1..8i64 {
            let prod = g.eps(k).mul(&g.eps(8 - k));
            let rhs = g.qi(1).mul(&g.z(-2)).mul(&g.x(-2));
            assert!(prod.equals(&rhs), "k={}", k);
        }
        // E_{n/2}^2 matches the pair relation
        let e4 = g.eps(4);
        assert!(e4.mul(&e4).equals(&g.qi(1).mul(&g.z(-2)).mul(&g.x(-2))));
    }

    #[test]
    fn fraction_arithmetic() {
        let g = gens(0, 1);
        let t = g.t_mono(&[1]);
        let qi = g.qi(1);
        // gamma^{-1} = (1 - q^{-1} t^{-1})/(1 - t)
        let gamma_inv = g.one_minus(&qi.mul(&t.inv())).div(&g.one_minus(&t));
        // times (1 - t) gives back the numerator
        let back = gamma_inv.mul(&g.one_minus(&t));
        assert!(back.equals(&g.one_minus(&qi.mul(&t.inv()))));
        // sums: 1/(1-t) + t/(1-t)... = (1+t)/(1-t)
        let a = g.one().div(&g.one_minus(&t));
        let b = t.div(&g.one_minus(&t));
        assert!(a.add(&b).equals(&g.one().add(&t).div(&g.one_minus(&t))));
    }

    #[test]
    fn exact_division() {
        let g = gens(0, 2);
        let t1 = g.t_mono(&[1, 0]);
        let t2 = g.t_mono(&[0, 1]);
        let a = g.one_minus(&t1);
        let b = g.one().add(&t2.mul(&g.qi(3)));
        let prod = a.mul(&b);
        let q = prod.num.try_exact_div(&a.num).unwrap();
        assert_eq!(q, b.num);
        // non-exact division returns None
        assert!(g.one_minus(&t2).num.try_exact_div(&a.num).is_none());
    }

    #[test]
    fn omega_division_and_normalization() {
        let g = gens(2, 1);
        let t = g.t_mono(&[1]);
        // denominator with omega gets rationalized
        let om = g.omega();
        let den = g.one().sub(&t.mul(&om).mul(&g.qi(1)));
        let e = g.one().div(&den);
        assert!(!e.den.has_omega());
        // e * den = 1
        assert!(e.mul(&den).equals(&g.one()));
    }

    #[test]
    fn zeta_coefficients() {
        let ring = Ring::new(4, 0, 4);
        let g = Gens::new(&ring);
        let i = g.zeta(1);
        assert!(i.mul(&i).equals(&g.rational(-1, 1)));
    }
}
