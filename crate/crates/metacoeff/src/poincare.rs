//! Sweeps of n -> (b_{W,n}, |f(Y_n^exc)|), recurrence detection, and exact
//! rational generating functions.

use crate::cover::{dual_datum, CoverDatum, CoverError};
use crate::exactlin::{Int, IntMatrix, Rat};
use crate::orbits::{exceptional_set, fixed_count_bw};
use crate::rootdata::RootDatum;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum SeriesError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("re-expansion of the rational form disagrees with the sequence at n = {0}")]
    Mismatch(usize),
    #[error("no recurrence found on the window")]
    NoRecurrence,
}

/// Result of an n-sweep of the fixed-point and exceptional counts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepResult {
    pub n_max: usize,
    /// b_{W,n} for n = 1..n_max (index 0 is n = 1)
    pub b_seq: Vec<Int>,
    /// |f(Y_n^exc)| for n = 1..n_max
    pub exc_seq: Vec<Int>,
    /// violations of the fundamental-group bounds (must be empty)
    pub bound_violations: Vec<String>,
}

/// Sweep n = 1..n_max, recording counts and checking the bounds
/// b <= |pi1| (semisimple), b <= 1 (simply connected), b = |pi1| (adjoint),
/// and exc <= b.
pub fn sweep(datum: &RootDatum, bisector: &IntMatrix, n_max: usize) -> Result<SweepResult, SeriesError> {
    sweep_jobs(datum, bisector, n_max, 1)
}

/// Per-n entry of a sweep.
fn sweep_one(
    datum: &RootDatum,
    bisector: &IntMatrix,
    n: usize,
) -> Result<(Int, Int, Vec<String>), SeriesError> {
    let cover = CoverDatum::new(datum.clone(), bisector.clone(), n as u64)?;
    let b = fixed_count_bw(&cover);
    let exc = exceptional_set(&cover).image_count;
    let mut violations = Vec::new();
    if exc > b {
        violations.push(format!("n={}: exc {} > b {}", n, exc, b));
    }
    if datum.is_semisimple() {
        let pi1 = dual_datum(&cover)?.pi1_order().unwrap();
        if b > pi1 {
            violations.push(format!("n={}: b {} > |pi1| {}", n, b, pi1));
        }
        if datum.is_simply_connected() && b > Int::one() {
            violations.push(format!("n={}: b {} > 1 for simply connected", n, b));
        }
        if datum.is_adjoint() && b != pi1 {
            violations.push(format!("n={}: adjoint b {} != |pi1| {}", n, b, pi1));
        }
    }
    Ok((b, exc, violations))
}

/// Sweep with per-n parallelism; results are merged in n-order regardless
/// of scheduling, so the output is deterministic.
pub fn sweep_jobs(
    datum: &RootDatum,
    bisector: &IntMatrix,
    n_max: usize,
    jobs: usize,
) -> Result<SweepResult, SeriesError> {
    assert!(n_max >= 4);
    let jobs = jobs.max(1);
    let mut rows: Vec<Option<(Int, Int, Vec<String>)>> = vec![None; n_max];
    if jobs == 1 {
        for n in 1..=n_max {
            rows[n - 1] = Some(sweep_one(datum, bisector, n)?);
        }
    } else {
        let results = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for chunk_start in (1..=n_max).step_by(jobs) {
                let chunk: Vec<usize> =
                    (chunk_start..(chunk_start + jobs).min(n_max + 1)).collect();
                for n in chunk {
                    handles.push((n, scope.spawn(move || sweep_one(datum, bisector, n))));
                }
            }
            let mut out: Vec<(usize, Result<_, SeriesError>)> = Vec::new();
            for (n, h) in handles {
                out.push((n, h.join().expect("sweep worker panicked")));
            }
            out
        });
        for (n, r) in results {
            rows[n - 1] = Some(r?);
        }
    }
    let mut b_seq = Vec::with_capacity(n_max);
    let mut exc_seq = Vec::with_capacity(n_max);
    let mut bound_violations = Vec::new();
    for row in rows.into_iter() {
        let (b, exc, v) = row.unwrap();
        b_seq.push(b);
        exc_seq.push(exc);
        bound_violations.extend(v);
    }
    Ok(SweepResult { n_max, b_seq, exc_seq, bound_violations })
}

/// Outcome of recurrence detection on an integer sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recurrence {
    Periodic { period: usize },
    /// b_n = sum_i coeffs[i] * b_{n-1-i}
    LinearRecurrence { coeffs: Vec<Rat> },
    None,
}

pub const MAX_RECURRENCE_ORDER: usize = 8;

/// Detect a pure period, else fit the smallest-order linear recurrence that
/// verifies on the whole window.
pub fn detect_recurrence(seq: &[Int], horizon: usize) -> Recurrence {
    assert!(horizon <= seq.len());
    let seq = &seq[..horizon];
    'period: for c in 1..=horizon / 2 {
        for i in 0..horizon - c {
            if seq[i] != seq[i + c] {
                continue 'period;
            }
        }
        return Recurrence::Periodic { period: c };
    }
    for order in 1..=MAX_RECURRENCE_ORDER.min(horizon / 2) {
        if let Some(coeffs) = fit_recurrence(seq, order) {
            return Recurrence::LinearRecurrence { coeffs };
        }
    }
    Recurrence::None
}

/// Exact least-order fit: solve the linear system from all windows and
/// verify forward.
fn fit_recurrence(seq: &[Int], order: usize) -> Option<Vec<Rat>> {
    let n = seq.len();
    if n < 2 * order + 1 {
        return None;
    }
    // unknowns c_1..c_order with seq[i] = sum_j c_j seq[i - j]
    // build from the first `order` usable rows, solve, then verify all
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for i in order..n {
        let row: Vec<Rat> = (1..=order)
            .map(|j| Rat::from(seq[i - j].clone()))
            .collect();
        rows.push(row);
        rhs.push(Rat::from(seq[i].clone()));
    }
    // gaussian elimination on the overdetermined system; consistency check
    let m = rows.len();
    let mut a = rows;
    let mut b = rhs;
    let mut piv_rows = Vec::new();
    let mut col = 0usize;
    let mut r = 0usize;
    while col < order && r < m {
        let p = (r..m).find(|&i| !a[i][col].is_zero());
        if let Some(p) = p {
            a.swap(r, p);
            b.swap(r, p);
            let pv = a[r][col].clone();
            for j in 0..order {
                a[r][j] = &a[r][j] / &pv;
            }
            b[r] = &b[r] / &pv;
            for i in 0..m {
                if i != r && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..order {
                        let sub = &f * &a[r][j];
                        a[i][j] = &a[i][j] - &sub;
                    }
                    let sub = &f * &b[r];
                    b[i] = &b[i] - &sub;
                }
            }
            piv_rows.push((r, col));
            r += 1;
        }
        col += 1;
    }
    // consistency of zero rows
    for i in r..m {
        if !b[i].is_zero() {
            return None;
        }
    }
    if piv_rows.len() < order {
        return None; // underdetermined; a smaller order would have matched
    }
    let mut coeffs = vec![Rat::zero(); order];
    for (row, col) in piv_rows {
        coeffs[col] = b[row].clone();
    }
    // verify forward on the whole window
    for i in order..n {
        let pred: Rat = (1..=order)
            .map(|j| &coeffs[j - 1] * Rat::from(seq[i - j].clone()))
            .sum();
        if pred != Rat::from(seq[i].clone()) {
            return None;
        }
    }
    Some(coeffs)
}

/// An exact rational generating function sum_{n>=1} a_n T^n =
/// numerator / denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    /// numerator coefficients, index = power of T
    pub numerator: Vec<Int>,
    /// denominator coefficients, index = power of T (constant term first)
    pub denominator: Vec<Int>,
}

impl RationalSeries {
    pub fn new(numerator: Vec<i64>, denominator: Vec<i64>) -> Self {
        RationalSeries {
            numerator: numerator.into_iter().map(Int::from).collect(),
            denominator: denominator.into_iter().map(Int::from).collect(),
        }
    }

    /// 1 - T^k denominator helper.
    pub fn over_one_minus_tk(numerator: Vec<i64>, k: usize) -> Self {
        let mut den = vec![0i64; k + 1];
        den[0] = 1;
        den[k] = -1;
        Self::new(numerator, den)
    }

    /// Equality as rational functions: cross-multiplied polynomial identity.
    pub fn equivalent(&self, other: &RationalSeries) -> bool {
        poly_mul(&self.numerator, &other.denominator) == poly_mul(&other.numerator, &self.denominator)
    }

    /// Power-series expansion coefficients a_0..a_len.
    pub fn expand(&self, len: usize) -> Vec<Int> {
        assert!(!self.denominator.is_empty() && !self.denominator[0].is_zero());
        let d0 = self.denominator[0].clone();
        let mut out = Vec::with_capacity(len + 1);
        for k in 0..=len {
            let mut acc = self.numerator.get(k).cloned().unwrap_or_else(Int::zero);
            for j in 1..=k.min(self.denominator.len() - 1) {
                let prev: &Int = &out[k - j];
                acc -= &self.denominator[j] * prev;
            }
            // denominators of interest have constant term 1; keep exact
            let (q, r) = num::Integer::div_rem(&acc, &d0);
            assert!(r.is_zero(), "non-integral expansion");
            out.push(q);
        }
        out
    }

    pub fn latex(&self) -> String {
        format!("\\frac{{{}}}{{{}}}", poly_latex(&self.numerator), poly_latex(&self.denominator))
    }
}

fn poly_latex(p: &[Int]) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "T".to_string(),
            _ => format!("T^{{{}}}", i),
        };
        let coeff = if i == 0 {
            c.to_string()
        } else if c.is_one() {
            String::new()
        } else if (-c.clone()).is_one() {
            "-".to_string()
        } else {
            c.to_string()
        };
        parts.push(format!("{}{}", coeff, mono));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn poly_mul(a: &[Int], b: &[Int]) -> Vec<Int> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.last().map(|c| c.is_zero()).unwrap_or(false) {
        out.pop();
    }
    out
}

/// Convert a detected recurrence into the exact rational form; errors out
/// when re-expansion disagrees with the sequence anywhere on the window.
pub fn to_rational_series(seq: &[Int], rec: &Recurrence) -> Result<RationalSeries, SeriesError> {
    let series = match rec {
        Recurrence::Periodic { period } => {
            let c = *period;
            let mut num = vec![0i64; c + 1];
            let mut rs = RationalSeries::over_one_minus_tk(num.clone(), c);
            for (i, v) in seq.iter().take(c).enumerate() {
                num[i + 1] = i64::try_from(v.clone()).expect("small period values");
            }
            rs.numerator = num.into_iter().map(Int::from).collect();
            rs
        }
        Recurrence::LinearRecurrence { coeffs } => {
            // denominator 1 - sum c_j T^j (cleared to integers), numerator =
            // truncation of (series * denominator)
            let order = coeffs.len();
            let mut den_rat = vec![Rat::one()];
            for c in coeffs {
                den_rat.push(-c.clone());
            }
            let lcm = den_rat
                .iter()
                .fold(Int::one(), |acc, c| num::Integer::lcm(&acc, c.denom()));
            let den: Vec<Int> = den_rat
                .iter()
                .map(|c| (c * Rat::from(lcm.clone())).to_integer())
                .collect();
            // full series with a_0 = 0
            let mut a = vec![Int::zero()];
            a.extend(seq.iter().cloned());
            let prod = poly_mul(&a, &den);
            let num: Vec<Int> = prod.into_iter().take(order + 1).collect();
            RationalSeries { numerator: num, denominator: den }
        }
        Recurrence::None => return Err(SeriesError::NoRecurrence),
    };
    // verify: expansion reproduces the sequence on the whole window
    let exp = series.expand(seq.len());
    for (i, v) in seq.iter().enumerate() {
        if &exp[i + 1] != v {
            return Err(SeriesError::Mismatch(i + 1));
        }
    }
    Ok(series)
}

/// Sweep + detect + convert, the one-call pipeline.
pub fn rational_series_of_sweep(seq: &[Int]) -> Result<(Recurrence, RationalSeries), SeriesError> {
    let rec = detect_recurrence(seq, seq.len());
    let rs = to_rational_series(seq, &rec)?;
    Ok((rec, rs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{kp_gl2_bisector, savin_bisector, standard_bisector};
    use crate::exactlin::int;
    use crate::rootdata::{build_root_datum, Family, RootLabel};

    fn seq(v: &[i64]) -> Vec<Int> {
        v.iter().map(|x| int(*x)).collect()
    }

    #[test]
    fn detect_periodic() {
        let s = seq(&[1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0]);
        assert_eq!(detect_recurrence(&s, 12), Recurrence::Periodic { period: 4 });
        let ones = seq(&[1; 10]);
        assert_eq!(detect_recurrence(&ones, 10), Recurrence::Periodic { period: 1 });
    }

    #[test]
    fn detect_linear() {
        let s: Vec<Int> = (1..=12).map(int).collect();
        match detect_recurrence(&s, 12) {
            Recurrence::LinearRecurrence { coeffs } => {
                assert_eq!(coeffs, vec![Rat::from(int(2)), Rat::from(int(-1))]);
            }
            other => panic!("expected linear recurrence, got {:?}", other),
        }
    }

    #[test]
    fn series_from_periodic() {
        let s = seq(&[1, 1, 1, 0, 1, 1, 1, 0]);
        let rec = detect_recurrence(&s, 8);
        let rs = to_rational_series(&s, &rec).unwrap();
        let expect = RationalSeries::over_one_minus_tk(vec![0, 1, 1, 1, 0], 4);
        assert!(rs.equivalent(&expect));
    }

    #[test]
    fn series_from_linear() {
        // all-n sequence: T/(1-T)^2
        let s: Vec<Int> = (1..=12).map(int).collect();
        let (_, rs) = rational_series_of_sweep(&s).unwrap();
        let expect = RationalSeries::new(vec![0, 1], vec![1, -2, 1]);
        assert!(rs.equivalent(&expect));
    }

    #[test]
    fn sweep_sp4() {
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::C, rank: 2 }).unwrap();
        let b = standard_bisector(&d, 1);
        let sw = sweep(&d, &b, 16).unwrap();
        assert!(sw.bound_violations.is_empty());
        assert_eq!(&sw.b_seq[..8], &seq(&[1, 1, 1, 0, 1, 1, 1, 0])[..]);
        let (_, rs) = rational_series_of_sweep(&sw.b_seq).unwrap();
        assert!(rs.equivalent(&RationalSeries::over_one_minus_tk(vec![0, 1, 1, 1], 4)));
    }

    #[test]
    fn sweep_e7_parity() {
        let d = build_root_datum(RootLabel::SimplyConnected { family: Family::E7, rank: 7 }).unwrap();
        let b = standard_bisector(&d, 1);
        let sw = sweep(&d, &b, 8).unwrap();
        assert!(sw.bound_violations.is_empty());
        assert_eq!(sw.b_seq, seq(&[1, 0, 1, 0, 1, 0, 1, 0]));
    }

    #[test]
    fn sweep_kp_gl2() {
        let d = build_root_datum(RootLabel::Gl { rank: 2 }).unwrap();
        let sw = sweep(&d, &kp_gl2_bisector(0), 12).unwrap();
        let expect: Vec<Int> = (1..=12).map(int).collect();
        assert_eq!(sw.b_seq, expect);
        assert_eq!(sw.exc_seq, expect);
        let (_, rs) = rational_series_of_sweep(&sw.b_seq).unwrap();
        assert!(rs.equivalent(&RationalSeries::new(vec![0, 1], vec![1, -2, 1])));
    }

    #[test]
    fn sweep_savin_gl3() {
        let d = build_root_datum(RootLabel::Gl { rank: 3 }).unwrap();
        let sw = sweep(&d, &savin_bisector(3), 12).unwrap();
        // b_{W,n} = n_o
        let expect: Vec<Int> = (1..=12u64).map(|n| Int::from(n / num::Integer::gcd(&n, &2))).collect();
        assert_eq!(sw.b_seq, expect);
        let (_, rs) = rational_series_of_sweep(&sw.b_seq).unwrap();
        let paper = RationalSeries::new(vec![0, 1, 1, 1], vec![1, 0, -2, 0, 1]); // (T+T^2+T^3)/(1-T^2)^2
        assert!(rs.equivalent(&paper));
    }

    #[test]
    fn sweep_so_odd() {
        let d = build_root_datum(RootLabel::SoOdd { rank: 2 }).unwrap();
        let b = standard_bisector(&d, 1);
        let sw = sweep(&d, &b, 16).unwrap();
        assert!(sw.bound_violations.is_empty(), "{:?}", sw.bound_violations);
        let (_, rs) = rational_series_of_sweep(&sw.b_seq).unwrap();
        let paper = RationalSeries::over_one_minus_tk(vec![0, 1, 1, 1, 2], 4);
        assert!(rs.equivalent(&paper));
        let (_, rse) = rational_series_of_sweep(&sw.exc_seq).unwrap();
        assert!(rse.equivalent(&RationalSeries::over_one_minus_tk(vec![0, 1], 1)));
    }

    #[test]
    fn expansion_mismatch_detected() {
        let s = seq(&[1, 2, 3, 5, 8, 13]);
        let rec = Recurrence::Periodic { period: 2 };
        assert!(matches!(to_rational_series(&s, &rec), Err(SeriesError::Mismatch(_))));
    }
}
