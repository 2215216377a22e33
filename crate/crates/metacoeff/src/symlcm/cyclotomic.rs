//! Exact arithmetic in the cyclotomic field Q(zeta_N), used as the
//! coefficient field of the symbolic ring (N = 1 gives plain Q).

use crate::exactlin::{Int, Rat};
use num::{One, Zero};
use std::sync::Arc;

/// Field descriptor: elements are polynomials in zeta of degree < phi,
/// reduced modulo the N-th cyclotomic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycField {
    pub order: u32,
    pub phi: usize,
    /// monic minimal polynomial coefficients c_0..c_{phi-1} (x^phi +
    /// c_{phi-1} x^{phi-1} + ... + c_0)
    pub minpoly: Vec<Rat>,
}

/// Coefficients of the N-th cyclotomic polynomial (exact, by recursive
/// division of x^N - 1 by the lower cyclotomics).
pub fn cyclotomic_poly(n: u32) -> Vec<Int> {
    // divisors in increasing order
    let mut polys: Vec<(u32, Vec<Int>)> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        // x^d - 1
        let mut num = vec![Int::zero(); d as usize + 1];
        num[0] = -Int::one();
        num[d as usize] = Int::one();
        // divide by all Phi_e with e | d, e < d
        let mut quotient = num;
        for (e, p) in &polys {
            if d % e == 0 {
                quotient = poly_div_exact(&quotient, p);
            }
        }
        polys.push((d, quotient));
    }
    polys.pop().unwrap().1
}

fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    let mut rem: Vec<Int> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut q = vec![Int::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let lead = rem.last().unwrap().clone();
        let deg = rem.len() - 1;
        q[deg - dd] = lead.clone();
        for i in 0..=dd {
            let sub = &lead * &den[i];
            rem[deg - dd + i] -= sub;
        }
        while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
            rem.pop();
        }
        if rem.is_empty() {
            break;
        }
    }
    assert!(rem.is_empty(), "non-exact cyclotomic division");
    q
}

impl CycField {
    pub fn new(order: u32) -> Arc<CycField> {
        assert!(order >= 1);
        let mp = cyclotomic_poly(order);
        let phi = mp.len() - 1;
        let minpoly = mp[..phi].iter().map(|c| Rat::from(c.clone())).collect();
        Arc::new(CycField { order, phi, minpoly })
    }

    pub fn zero(&self) -> Cyc {
        Cyc(vec![Rat::zero(); self.phi])
    }

    pub fn one(&self) -> Cyc {
        let mut v = vec![Rat::zero(); self.phi];
        v[0] = Rat::one();
        Cyc(v)
    }

    pub fn from_rat(&self, r: Rat) -> Cyc {
        let mut v = vec![Rat::zero(); self.phi];
        v[0] = r;
        Cyc(v)
    }

    pub fn from_int(&self, k: i64) -> Cyc {
        self.from_rat(Rat::from(Int::from(k)))
    }

    /// zeta^k as a field element.
    pub fn zeta_pow(&self, k: i64) -> Cyc {
        let n = self.order as i64;
        let k = k.rem_euclid(n) as usize;
        // x^k reduced mod minpoly
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = Rat::one();
        self.reduce(v)
    }

    fn reduce(&self, mut v: Vec<Rat>) -> Cyc {
        while v.len() > self.phi {
            let lead = v.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let deg = v.len(); // current degree after pop is deg = len
            let shift = deg - self.phi;
            for i in 0..self.phi {
                let sub = &lead * &self.minpoly[i];
                v[shift + i] = &v[shift + i] - sub;
            }
        }
        v.resize(self.phi, Rat::zero());
        Cyc(v)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut v = vec![Rat::zero(); 2 * self.phi];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                v[i + j] = &v[i + j] + p;
            }
        }
        self.reduce(v)
    }

    pub fn scale(&self, a: &Cyc, r: &Rat) -> Cyc {
        Cyc(a.0.iter().map(|x| x * r).collect())
    }

    /// Field inverse via the extended Euclidean algorithm in Q[x] modulo
    /// the minimal polynomial.
    pub fn inv(&self, a: &Cyc) -> Cyc {
        assert!(!a.is_zero(), "division by zero in Q(zeta)");
        // full minimal polynomial (monic)
        let mut m: Vec<Rat> = self.minpoly.clone();
        m.push(Rat::one());
        let (mut r0, mut r1) = (trim(m), trim(a.0.clone()));
        let (mut s0, mut s1) = (vec![], vec![Rat::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul_q(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd (a nonzero constant since minpoly is irreducible over Q)
        assert_eq!(r0.len(), 1, "element not invertible");
        let c = r0[0].clone();
        let mut out: Vec<Rat> = s0.iter().map(|x| x / &c).collect();
        out.resize(self.phi, Rat::zero());
        Cyc(out)
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_b = b[db].clone();
    let mut q = vec![Rat::zero(); a.len().saturating_sub(db)];
    while rem.len() > db {
        let deg = rem.len() - 1;
        let c = rem.last().unwrap() / &lead_b;
        q[deg - db] = c.clone();
        for i in 0..=db {
            let sub = &c * &b[i];
            rem[deg - db + i] = &rem[deg - db + i] - sub;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    (trim(q), rem)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = &out[i] + x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] = &out[i] - x;
    }
    trim(out)
}

fn poly_mul_q(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let p = x * y;
            out[i + j] = &out[i + j] + p;
        }
    }
    trim(out)
}

/// An element of Q(zeta_N): coordinates in the power basis 1, zeta, ...
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cyc(pub Vec<Rat>);

impl Cyc {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<&Rat> {
        if self.0[1..].iter().all(|c| c.is_zero()) {
            Some(&self.0[0])
        } else {
            None
        }
    }
}

impl std::fmt::Display for Cyc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(r) = self.is_rational() {
            return write!(f, "{}", r);
        }
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = match i {
                0 => format!("{}", c),
                1 => format!("{}*zeta", c),
                _ => format!("{}*zeta^{}", c, i),
            };
            parts.push(s);
        }
        write!(f, "({})", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![int(-1), int(1)]);
        assert_eq!(cyclotomic_poly(2), vec![int(1), int(1)]);
        assert_eq!(cyclotomic_poly(4), vec![int(1), int(0), int(1)]);
        assert_eq!(cyclotomic_poly(3), vec![int(1), int(1), int(1)]);
        assert_eq!(cyclotomic_poly(6), vec![int(1), int(-1), int(1)]);
        assert_eq!(cyclotomic_poly(12), vec![int(1), int(0), int(-1), int(0), int(1)]);
    }

    #[test]
    fn zeta_arithmetic() {
        let f = CycField::new(8);
        let z = f.zeta_pow(1);
        // zeta^8 = 1, zeta^4 = -1
        assert_eq!(f.zeta_pow(8), f.one());
        let mut p = f.one();
        for _ in 0..4 {
            p = f.mul(&p, &z);
        }
        assert_eq!(p, f.neg(&f.one()));
        // inverse: z * z^{-1} = 1
        let zi = f.inv(&z);
        assert_eq!(f.mul(&z, &zi), f.one());
    }

    #[test]
    fn geometric_sum_vanishes() {
        for n in [3u32, 4, 5, 6, 8, 12] {
            let f = CycField::new(n);
            let mut s = f.zero();
            for k in 0..n as i64 {
                s = f.add(&s, &f.zeta_pow(k));
            }
            assert!(s.is_zero(), "sum of all {}-th roots", n);
        }
    }
}
