//! Named verification suites shared by the CLI `verify` subcommand and the
//! acceptance test target. Each suite returns a list of pass/fail items.

use crate::cover::{
    dual_datum, dual_period, kp_gl2_bisector, savin_bisector, standard_bisector, CoverDatum,
};
use crate::exactlin::{int, Int, IntMatrix};
use crate::gl2sl2;
use crate::orbits::{coset_space, exceptional_set, fixed_count_bw, fixed_count_bw_enumerated};
use crate::poincare::{rational_series_of_sweep, sweep, RationalSeries};
use crate::rootdata::{build_root_datum, Family, RootDatum, RootLabel};
use crate::symlcm::ops::{
    laux_identity, ring_for_cover, trace_closed_form, verify_det_t_m1, Character, GammaBundle,
};
use crate::symlcm::ring::Gens;
use crate::symlcm::whittaker::{adjoint_gamma_product, casselman_shalika_check};
use num::{Integer, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }
}

fn item(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> SuiteItem {
    SuiteItem { name: name.into(), pass, detail: detail.into() }
}

pub fn sc_datum(family: Family, rank: usize) -> RootDatum {
    build_root_datum(RootLabel::SimplyConnected { family, rank }).unwrap()
}

pub fn sc_cover(family: Family, rank: usize, n: u64) -> CoverDatum {
    let d = sc_datum(family, rank);
    let b = standard_bisector(&d, 1);
    CoverDatum::new(d, b, n).unwrap()
}

pub fn kp_cover(n: u64, c: i64) -> CoverDatum {
    let d = build_root_datum(RootLabel::Gl { rank: 2 }).unwrap();
    CoverDatum::new(d, kp_gl2_bisector(c), n).unwrap()
}

pub fn savin_cover(r: usize, n: u64) -> CoverDatum {
    let d = build_root_datum(RootLabel::Gl { rank: r }).unwrap();
    CoverDatum::new(d, savin_bisector(r), n).unwrap()
}

pub fn so_odd_cover(r: usize, n: u64) -> CoverDatum {
    let d = build_root_datum(RootLabel::SoOdd { rank: r }).unwrap();
    let b = standard_bisector(&d, 1);
    CoverDatum::new(d, b, n).unwrap()
}

/// 2-adic valuation.
fn two_exp(n: u64) -> u32 {
    n.trailing_zeros()
}

/// Table condition for b_{W,n} = 1 of the classical simply-connected
/// families with Q(short coroot) = 1.
fn table_b_condition(family: Family, r: usize, n: u64) -> bool {
    match family {
        Family::A => {
            if r % 2 == 0 {
                true
            } else {
                let target = ((r as u64) + 1) / 2;
                target % (1u64 << two_exp(n)) == 0
            }
        }
        Family::C => n % 4 != 0,
        Family::B => match r % 4 {
            0 | 3 => true,
            1 => n % 4 != 0,
            _ => n % 2 == 1,
        },
        Family::D => match r % 4 {
            0 | 1 => true,
            2 => n % 2 == 1,
            _ => n % 4 != 0,
        },
        Family::E6 | Family::E8 | Family::F4 | Family::G2 => true,
        Family::E7 => n % 2 == 1,
    }
}

/// Table condition for |Y_n^exc| = 1.
fn table_exc_condition(family: Family, r: usize, n: u64) -> bool {
    match family {
        Family::A => {
            if r % 2 == 0 {
                true
            } else {
                n % 2 == 1
            }
        }
        Family::C => n % 4 != 0,
        Family::B => match r % 4 {
            0 => true,
            1 => n % 4 != 0,
            2 => n % 2 == 1,
            _ => n % 2 == 1 || n % 4 == 0,
        },
        Family::D => match r % 4 {
            0 | 1 => true,
            _ => n % 2 == 1,
        },
        Family::E6 | Family::E8 | Family::F4 | Family::G2 => true,
        Family::E7 => n % 2 == 1,
    }
}

pub fn classical_grid() -> Vec<(Family, usize)> {
    let mut grid = Vec::new();
    for r in 2..=6 {
        grid.push((Family::A, r));
    }
    for r in 3..=6 {
        grid.push((Family::B, r));
    }
    for r in 1..=5 {
        grid.push((Family::C, r));
    }
    for r in 4..=7 {
        grid.push((Family::D, r));
    }
    grid
}

pub fn exceptional_grid() -> Vec<(Family, usize)> {
    vec![(Family::E6, 6), (Family::E7, 7), (Family::E8, 8), (Family::F4, 4), (Family::G2, 2)]
}

fn table_suite(name: &str, grid: &[(Family, usize)], n_max: u64) -> SuiteReport {
    let mut items = Vec::new();
    for (family, r) in grid {
        let mut ok = true;
        let mut detail = String::new();
        for n in 1..=n_max {
            let cover = sc_cover(*family, *r, n);
            let b = fixed_count_bw(&cover);
            let exc = exceptional_set(&cover).image_count;
            let b_pred = b == int(1);
            let e_pred = exc == int(1);
            if b_pred != table_b_condition(*family, *r, n) {
                ok = false;
                detail = format!("b predicate off at n = {}", n);
                break;
            }
            if e_pred != table_exc_condition(*family, *r, n) {
                ok = false;
                detail = format!("exc predicate off at n = {}", n);
                break;
            }
            // simply connected: b is 0/1
            if b > int(1) {
                ok = false;
                detail = format!("b > 1 at n = {}", n);
                break;
            }
        }
        items.push(item(format!("{:?}{} n<=24", family, r), ok, detail));
    }
    SuiteReport { suite: name.into(), items }
}

pub fn suite_table1() -> SuiteReport {
    table_suite("table1", &classical_grid(), 24)
}

pub fn suite_table2() -> SuiteReport {
    table_suite("table2", &exceptional_grid(), 24)
}

/// The closed-form Poincare series of the grid families.
pub fn paper_series(family: Family, r: usize) -> (RationalSeries, RationalSeries) {
    let t_over_1mt = RationalSeries::over_one_minus_tk(vec![0, 1], 1);
    let t_over_1mt2 = RationalSeries::over_one_minus_tk(vec![0, 1], 2);
    let c_form = RationalSeries::over_one_minus_tk(vec![0, 1, 1, 1], 4);
    match family {
        Family::A => {
            if r % 2 == 0 {
                (t_over_1mt.clone(), t_over_1mt)
            } else {
                // sum_{i=0..J} T^{2^i} / (1 - T^{2^{i+1}}), J = v_2((r+1)/2)
                let j = two_exp((r as u64 + 1) / 2);
                let k = 1usize << (j + 1);
                let mut num = vec![Int::zero(); k];
                for i in 0..=j {
                    // T^{2^i} (1 - T^k)/(1 - T^{2^{i+1}}) = T^{2^i} (1 +
                    // T^{2^{i+1}} + ...)
                    let step = 1usize << (i + 1);
                    let mut p = 1usize << i;
                    while p < k {
                        num[p] += Int::from(1);
                        p += step;
                    }
                }
                let pw = RationalSeries {
                    numerator: num,
                    denominator: RationalSeries::over_one_minus_tk(vec![0], k).denominator,
                };
                (pw, t_over_1mt2)
            }
        }
        Family::C => (c_form.clone(), c_form),
        Family::B => match r % 4 {
            0 => (t_over_1mt.clone(), t_over_1mt),
            1 => (c_form.clone(), c_form),
            2 => (t_over_1mt2.clone(), t_over_1mt2),
            _ => (t_over_1mt, RationalSeries::over_one_minus_tk(vec![0, 1, 0, 1, 1], 4)),
        },
        Family::D => match r % 4 {
            0 | 1 => (t_over_1mt.clone(), t_over_1mt),
            2 => (t_over_1mt2.clone(), t_over_1mt2),
            _ => (c_form, t_over_1mt2),
        },
        Family::E7 => (t_over_1mt2.clone(), t_over_1mt2),
        _ => (t_over_1mt.clone(), t_over_1mt),
    }
}

pub fn suite_poincare6() -> SuiteReport {
    let mut items = Vec::new();
    let horizon = 48usize;
    let mut families = classical_grid();
    families.extend(exceptional_grid());
    for (family, r) in families {
        let d = sc_datum(family, r);
        let b = standard_bisector(&d, 1);
        match sweep(&d, &b, horizon) {
            Ok(sw) => {
                let mut ok = sw.bound_violations.is_empty();
                let mut detail = sw.bound_violations.join("; ");
                let (expect_w, expect_e) = paper_series(family, r);
                match rational_series_of_sweep(&sw.b_seq) {
                    Ok((_, rs)) => {
                        if !rs.equivalent(&expect_w) {
                            ok = false;
                            detail = format!("P_W mismatch: got {:?}", rs);
                        }
                    }
                    Err(e) => {
                        ok = false;
                        detail = format!("P_W: {}", e);
                    }
                }
                match rational_series_of_sweep(&sw.exc_seq) {
                    Ok((_, rs)) => {
                        if !rs.equivalent(&expect_e) {
                            ok = false;
                            detail = format!("P_exc mismatch: got {:?}", rs);
                        }
                    }
                    Err(e) => {
                        ok = false;
                        detail = format!("P_exc: {}", e);
                    }
                }
                // periodicity of the dual data (almost-simple families)
                match dual_period(&d, &b, 32) {
                    Ok((c, _)) => {
                        if c == 0 {
                            ok = false;
                        }
                        detail = format!("{} period {}", detail, c);
                    }
                    Err(e) => {
                        ok = false;
                        detail = format!("{}; no period: {}", detail, e);
                    }
                }
                items.push(item(format!("{:?}{}", family, r), ok, detail));
            }
            Err(e) => items.push(item(format!("{:?}{}", family, r), false, format!("{}", e))),
        }
    }
    // SO(2r+1): P_W = (2T^4 + T^3 + T^2 + T)/(1 - T^4), P_exc = T/(1 - T)
    for r in 2..=5usize {
        let d = build_root_datum(RootLabel::SoOdd { rank: r }).unwrap();
        let b = standard_bisector(&d, 1);
        let sw = sweep(&d, &b, horizon).unwrap();
        let mut ok = sw.bound_violations.is_empty();
        let (_, rs_w) = rational_series_of_sweep(&sw.b_seq).unwrap();
        let (_, rs_e) = rational_series_of_sweep(&sw.exc_seq).unwrap();
        ok &= rs_w.equivalent(&RationalSeries::over_one_minus_tk(vec![0, 1, 1, 1, 2], 4));
        ok &= rs_e.equivalent(&RationalSeries::over_one_minus_tk(vec![0, 1], 1));
        items.push(item(format!("SO{}", 2 * r + 1), ok, ""));
    }
    // KP GL2: T/(1 - T)^2 for both series
    {
        let d = build_root_datum(RootLabel::Gl { rank: 2 }).unwrap();
        let sw = sweep(&d, &kp_gl2_bisector(0), horizon).unwrap();
        let (_, rs_w) = rational_series_of_sweep(&sw.b_seq).unwrap();
        let (_, rs_e) = rational_series_of_sweep(&sw.exc_seq).unwrap();
        let expect = RationalSeries::new(vec![0, 1], vec![1, -2, 1]);
        items.push(item(
            "KP GL2",
            rs_w.equivalent(&expect) && rs_e.equivalent(&expect),
            "",
        ));
    }
    // Savin GL_r: (T + T^2 + T^3)/(1 - T^2)^2
    for r in 2..=4usize {
        let d = build_root_datum(RootLabel::Gl { rank: r }).unwrap();
        let sw = sweep(&d, &savin_bisector(r), horizon).unwrap();
        let (_, rs_w) = rational_series_of_sweep(&sw.b_seq).unwrap();
        let (_, rs_e) = rational_series_of_sweep(&sw.exc_seq).unwrap();
        let expect = RationalSeries::new(vec![0, 1, 1, 1], vec![1, 0, -2, 0, 1]);
        items.push(item(
            format!("Savin GL{}", r),
            rs_w.equivalent(&expect) && rs_e.equivalent(&expect),
            "",
        ));
    }
    SuiteReport { suite: "poincare6".into(), items }
}

pub fn suite_tm1() -> SuiteReport {
    let mut items = Vec::new();
    for n in 1..=8u64 {
        let cover = sc_cover(Family::A, 1, n);
        let v = verify_det_t_m1(&cover, 0, 10_000).unwrap();
        items.push(item(format!("SL2 n={}", n), v.ok(), ""));
    }
    for n in 1..=5u64 {
        let cover = kp_cover(n, 0);
        let v = verify_det_t_m1(&cover, 0, 10_000).unwrap();
        items.push(item(format!("GL2 n={}", n), v.ok(), ""));
    }
    for n in 1..=6u64 {
        let cover = sc_cover(Family::C, 2, n);
        for alpha in 0..2 {
            let v = verify_det_t_m1(&cover, alpha, 10_000).unwrap();
            items.push(item(format!("Sp4 n={} alpha={}", n, alpha), v.ok(), ""));
        }
    }
    for n in 1..=4u64 {
        let cover = sc_cover(Family::G2, 2, n);
        for alpha in 0..2 {
            let v = verify_det_t_m1(&cover, alpha, 10_000).unwrap();
            items.push(item(format!("G2 n={} alpha={}", n, alpha), v.ok(), ""));
        }
    }
    // the SL2 trichotomy and GL2 uniform formula at the bundle level
    items.push(item("SL2 trichotomy", sl2_trichotomy_check(), ""));
    items.push(item("GL2 uniform formula", gl2_uniform_check(), ""));
    items.push(item("Example 4.22 matrices", example_422_check(), ""));
    SuiteReport { suite: "tm1".into(), items }
}

/// The three branches of the SL(2) determinant formula, asserted in their
/// closed forms.
pub fn sl2_trichotomy_check() -> bool {
    // n odd
    for n in [3u64, 5, 7] {
        let cover = sc_cover(Family::A, 1, n);
        let v = verify_det_t_m1(&cover, 0, 100).unwrap();
        let ring = ring_for_cover(&cover);
        let g = Gens::new(&ring);
        let chi = Character::base(&cover);
        let bundle = GammaBundle::new(&cover, &g, &chi, 0);
        let expect = bundle
            .plancherel_inv
            .pow(((n - 1) / 2) as i64)
            .mul(&bundle.gamma_inv);
        if !v.det.equals(&expect) {
            return false;
        }
    }
    // n = 2d, d odd: metaplectic branch
    for n in [2u64, 6] {
        let cover = sc_cover(Family::A, 1, n);
        let v = verify_det_t_m1(&cover, 0, 100).unwrap();
        let ring = ring_for_cover(&cover);
        let g = Gens::new(&ring);
        let chi = Character::base(&cover);
        let bundle = GammaBundle::new(&cover, &g, &chi, 0);
        let d = n / 2;
        let expect = bundle
            .plancherel_inv
            .pow(((d - 1) / 2) as i64)
            .mul(bundle.meta_gamma_inv.as_ref().unwrap());
        if !crate::symlcm::ops::equals_omega_safe(&v.det, &expect) {
            return false;
        }
    }
    // n = 2d, d even: pure Plancherel branch with the sign
    for n in [4u64, 8] {
        let cover = sc_cover(Family::A, 1, n);
        let v = verify_det_t_m1(&cover, 0, 100).unwrap();
        let ring = ring_for_cover(&cover);
        let g = Gens::new(&ring);
        let chi = Character::base(&cover);
        let bundle = GammaBundle::new(&cover, &g, &chi, 0);
        let d = (n / 2) as i64;
        let mono = chi.value(&cover, &g, &[int(-d)]);
        let expect = bundle.plancherel_inv.pow(d / 2).mul(&mono).neg();
        if !v.det.equals(&expect) {
            return false;
        }
    }
    true
}

pub fn gl2_uniform_check() -> bool {
    for n in 1..=4u64 {
        let cover = kp_cover(n, 0);
        let v = verify_det_t_m1(&cover, 0, 10_000).unwrap();
        let ring = ring_for_cover(&cover);
        let g = Gens::new(&ring);
        let chi = Character::base(&cover);
        let bundle = GammaBundle::new(&cover, &g, &chi, 0);
        let expect = bundle
            .plancherel_inv
            .pow(((n * n - n) / 2) as i64)
            .mul(&bundle.gamma_inv.pow(n as i64));
        if !v.det.equals(&expect) {
            return false;
        }
    }
    true
}

/// Entry-by-entry reproduction of the displayed S, C, M for the 3-fold
/// SL(2) cover with representatives (0, alpha, -alpha).
pub fn example_422_check() -> bool {
    use crate::symlcm::ops::{change_basis_matrix, local_coeff_matrix, scattering_rank_one};
    let cover = sc_cover(Family::A, 1, 3);
    let ring = ring_for_cover(&cover);
    let g = Gens::new(&ring);
    let chi = Character::base(&cover);
    let reps = vec![vec![int(0)], vec![int(1)], vec![int(-1)]];
    let s = scattering_rank_one(&cover, &g, &reps, 0, &chi);
    let c = change_basis_matrix(&cover, &g, &reps, 0, &chi);
    let m = local_coeff_matrix(&cover, &g, &reps, 0, &chi);
    let t = chi.value(&cover, &g, &[int(3)]);
    let tau1 = g.one_minus(&g.qi(1)).div(&g.one_minus(&t));
    let gamma_inv = g.one_minus(&g.qi(1).mul(&t.inv())).div(&g.one_minus(&t));
    let zero = g.zero();
    let one = g.one();
    let s_expect = [
        [tau1.clone(), g.gauss(-1), zero.clone()],
        [g.gauss(1), tau1.mul(&t), zero.clone()],
        [zero.clone(), zero.clone(), gamma_inv.clone()],
    ];
    let c_expect = [
        [one.clone(), zero.clone(), zero.clone()],
        [zero.clone(), zero.clone(), one.clone()],
        [zero.clone(), one.clone(), zero.clone()],
    ];
    let m_expect = [
        [tau1.clone(), zero.clone(), g.gauss(-1)],
        [g.gauss(1), zero.clone(), tau1.mul(&t)],
        [zero.clone(), gamma_inv, zero.clone()],
    ];
    for i in 0..3 {
        for j in 0..3 {
            if !s.at(i, j).equals(&s_expect[i][j])
                || !c.at(i, j).equals(&c_expect[i][j])
                || !m.at(i, j).equals(&m_expect[i][j])
            {
                return false;
            }
        }
    }
    true
}

pub fn suite_trace() -> SuiteReport {
    let mut items = Vec::new();
    for n in 1..=8u64 {
        let cover = sc_cover(Family::A, 1, n);
        let v = trace_closed_form(&cover).unwrap();
        items.push(item(format!("SL2 trace n={}", n), v.ok(), ""));
    }
    for n in 2..=12u32 {
        items.push(item(format!("cyclotomic average n={}", n), laux_identity(n), ""));
    }
    SuiteReport { suite: "trace".into(), items }
}

pub fn suite_cs() -> SuiteReport {
    let mut items = Vec::new();
    for n in [3u64, 5] {
        let cover = sc_cover(Family::A, 1, n);
        let ys: Vec<Vec<Int>> = (0..=2).map(|k| vec![Int::from(k * n)]).collect();
        match casselman_shalika_check(&cover, &ys) {
            Ok(rep) => items.push(item(format!("SL2 n={}", n), rep.ok(), "")),
            Err(e) => items.push(item(format!("SL2 n={}", n), false, format!("{}", e))),
        }
    }
    for n in [2u64, 3] {
        let cover = kp_cover(n, 0);
        let ni = n as i64;
        let ys = vec![
            vec![int(0), int(0)],
            vec![int(ni), int(0)],
            vec![int(ni), int(ni)],
            vec![int(2 * ni), int(ni)],
        ];
        match casselman_shalika_check(&cover, &ys) {
            Ok(rep) => items.push(item(format!("GL2 n={}", n), rep.ok(), "")),
            Err(e) => items.push(item(format!("GL2 n={}", n), false, format!("{}", e))),
        }
    }
    {
        let n = 3u64;
        let cover = sc_cover(Family::C, 2, n);
        // dominant vectors of Y_{Q,3} = 3 Z^2 in coroot coordinates: y =
        // (a, b) with <y, alpha_1> >= 0 and <y, alpha_2> >= 0
        let cand = [
            vec![int(3), int(3)],
            vec![int(6), int(3)],
            vec![int(3), int(0)],
        ];
        let mut ys = vec![vec![int(0), int(0)]];
        for y in cand {
            if (0..2).all(|i| cover.datum.pair_simple(i, &y) >= int(0)) && cover.in_yqn(&y) {
                ys.push(y);
            }
        }
        match casselman_shalika_check(&cover, &ys) {
            Ok(rep) => items.push(item(format!("Sp4 n={}", n), rep.ok(), "")),
            Err(e) => items.push(item(format!("Sp4 n={}", n), false, format!("{}", e))),
        }
    }
    SuiteReport { suite: "cs".into(), items }
}

pub fn suite_naivels() -> SuiteReport {
    let mut items = Vec::new();
    for n in [3u64, 5] {
        let cover = sc_cover(Family::C, 2, n);
        match adjoint_gamma_product(&cover, &[0]) {
            Ok(out) => items.push(item(
                format!("Sp4 Siegel n={}", n),
                out.chain_ok && out.matrix_entry_ok && out.blocks.len() == 2,
                format!("{} graded blocks", out.blocks.len()),
            )),
            Err(e) => items.push(item(format!("Sp4 Siegel n={}", n), false, format!("{}", e))),
        }
    }
    for n in [3u64] {
        let cover = kp_cover(n, 0);
        match adjoint_gamma_product(&cover, &[]) {
            Ok(out) => items.push(item(
                format!("GL2 Borel n={}", n),
                out.chain_ok && out.matrix_entry_ok,
                "",
            )),
            Err(e) => items.push(item(format!("GL2 Borel n={}", n), false, format!("{}", e))),
        }
    }
    for n in [3u64, 5] {
        let cover = sc_cover(Family::A, 1, n);
        match adjoint_gamma_product(&cover, &[]) {
            Ok(out) => items.push(item(
                format!("SL2 Borel n={}", n),
                out.chain_ok && out.matrix_entry_ok && out.blocks.len() == 1,
                "",
            )),
            Err(e) => items.push(item(format!("SL2 Borel n={}", n), false, format!("{}", e))),
        }
    }
    SuiteReport { suite: "naivels".into(), items }
}

pub fn suite_gl2() -> SuiteReport {
    let mut items = Vec::new();
    // block bookkeeping for n <= 12, |c| <= 3
    let mut book = true;
    for n in 1..=12u64 {
        for c in -3..=3i64 {
            if !gl2sl2::dimension_bookkeeping(n, c) {
                book = false;
            }
        }
    }
    items.push(item("block bookkeeping n<=12 |c|<=3", book, ""));
    for n in [4u64, 8] {
        match gl2sl2::explicit4_checks(n) {
            Ok(rs) => {
                for r in rs {
                    items.push(item(r.name, r.pass, r.detail));
                }
            }
            Err(e) => items.push(item(format!("explicit4 n={}", n), false, format!("{}", e))),
        }
    }
    for n in [2u64, 3, 4, 6] {
        for c in [0i64, 1] {
            match gl2sl2::gl2_det_trace_verify(n, c) {
                Ok(rs) => {
                    for r in rs {
                        items.push(item(r.name, r.pass, r.detail));
                    }
                }
                Err(e) => {
                    items.push(item(format!("gl2 n={} c={}", n, c), false, format!("{}", e)))
                }
            }
        }
    }
    for r in gl2sl2::identity_suite() {
        items.push(item(r.name, r.pass, r.detail));
    }
    SuiteReport { suite: "gl2".into(), items }
}

/// Congruence-vs-enumeration agreement and dual-datum bounds over a small
/// grid (the standalone property suite entry point).
pub fn suite_properties() -> SuiteReport {
    let mut items = Vec::new();
    let mut covers: Vec<(String, CoverDatum)> = Vec::new();
    for n in 1..=8 {
        covers.push((format!("SL2 n={}", n), sc_cover(Family::A, 1, n)));
    }
    for n in 1..=5 {
        covers.push((format!("KP GL2 n={}", n), kp_cover(n, 0)));
        covers.push((format!("KP GL2 c=1 n={}", n), kp_cover(n, 1)));
    }
    for n in 1..=6 {
        covers.push((format!("Sp4 n={}", n), sc_cover(Family::C, 2, n)));
    }
    for n in 1..=4 {
        covers.push((format!("G2 n={}", n), sc_cover(Family::G2, 2, n)));
        covers.push((format!("Savin GL3 n={}", n), savin_cover(3, n)));
        covers.push((format!("SO7 n={}", n), so_odd_cover(3, n)));
    }
    for (name, cover) in &covers {
        let space = coset_space(cover, 10_000);
        let mut ok = true;
        let mut detail = String::new();
        if space.reps.is_some() {
            if Some(fixed_count_bw(cover)) != fixed_count_bw_enumerated(&space) {
                ok = false;
                detail = "congruence vs enumeration".into();
            }
        }
        // d - b_alpha even, exc <= b, modified coroots in Y_Qn
        for i in 0..cover.datum.num_simple() {
            let (b, _a) = crate::orbits::alpha_counts(&space, i);
            let diff = &space.d - &b;
            if !diff.is_multiple_of(&int(2)) {
                ok = false;
                detail = format!("d - b odd at alpha {}", i);
            }
        }
        let b = fixed_count_bw(cover);
        let exc = exceptional_set(cover).image_count;
        if exc > b {
            ok = false;
            detail = "exc > b".into();
        }
        if cover.datum.is_semisimple() {
            let dd = dual_datum(cover).unwrap();
            if b > dd.pi1_order().unwrap() {
                ok = false;
                detail = "b > |pi1|".into();
            }
        }
        items.push(item(name.clone(), ok, detail));
    }
    // symbolic-layer invariants: cocycle, Plancherel composition, basis
    // independence, exceptional-row support
    items.push(item("cocycle relation (Sp4 n=3)", cocycle_check(), ""));
    items.push(item("Plancherel composition", plancherel_check(), ""));
    items.push(item("basis independence of det", basis_independence_check(), ""));
    items.push(item("exceptional-row support", exceptional_row_support_check(), ""));
    SuiteReport { suite: "properties".into(), items }
}

/// S(w2 w1, chi) = S(w1, chi) S(w2, {}^{w1} chi) for all reduced length-2
/// products of a rank-2 cover.
pub fn cocycle_check() -> bool {
    use crate::rootdata::{weyl_group, WeylElement};
    use crate::symlcm::ops::{scattering_matrix, scattering_rank_one};
    let cover = sc_cover(Family::C, 2, 3);
    let space = coset_space(&cover, 1000);
    let reps = space.reps.clone().unwrap();
    let ring = ring_for_cover(&cover);
    let g = Gens::new(&ring);
    let chi = Character::base(&cover);
    let wg = weyl_group(&cover.datum, 100).unwrap();
    for w in &wg {
        if w.length != 2 {
            continue;
        }
        let s_full = scattering_matrix(&cover, &g, &reps, w, &chi);
        let w1 = WeylElement::from_word(&cover.datum, &[w.word[0]]).unwrap();
        let s1 = scattering_rank_one(&cover, &g, &reps, w.word[0], &chi);
        let chi1 = chi.twist(&cover, &w1.matrix);
        let s2 = scattering_rank_one(&cover, &g, &reps, w.word[1], &chi1);
        if !s_full.equals(&s1.mul(&s2)) {
            return false;
        }
    }
    true
}

/// S(w_alpha, chi) S(w_alpha, {}^{w_alpha} chi) = mu^{-1} id.
pub fn plancherel_check() -> bool {
    use crate::symlcm::ops::scattering_rank_one;
    for cover in [sc_cover(Family::A, 1, 3), sc_cover(Family::A, 1, 4), sc_cover(Family::C, 2, 2)]
    {
        let space = coset_space(&cover, 1000);
        let reps = space.reps.clone().unwrap();
        let ring = ring_for_cover(&cover);
        let g = Gens::new(&ring);
        let chi = Character::base(&cover);
        for alpha in 0..cover.datum.num_simple() {
            let s = scattering_rank_one(&cover, &g, &reps, alpha, &chi);
            let w = cover.datum.reflection_matrix(alpha);
            let chi_w = chi.twist(&cover, &w);
            let s_w = scattering_rank_one(&cover, &g, &reps, alpha, &chi_w);
            let bundle = GammaBundle::new(&cover, &g, &chi, alpha);
            if !s.mul(&s_w).is_identity_times(&bundle.plancherel_inv) {
                return false;
            }
        }
    }
    true
}

/// det(M) is independent of the ordering and the representative choice.
pub fn basis_independence_check() -> bool {
    use crate::symlcm::ops::local_coeff_matrix;
    let cover = sc_cover(Family::A, 1, 5);
    let ring = ring_for_cover(&cover);
    let g = Gens::new(&ring);
    let chi = Character::base(&cover);
    let rr = |v: &[i64]| -> Vec<Vec<Int>> { v.iter().map(|k| vec![int(*k)]).collect() };
    let orders = [
        rr(&[0, 1, 2, 3, 4]),
        rr(&[4, 2, 0, 1, 3]),
        rr(&[2, 0, 4, 3, 1]),
        rr(&[0, 1, 2, 3, -1]),
        rr(&[5, 1, -3, 3, 4]),
    ];
    let dets: Vec<_> = orders
        .iter()
        .map(|reps| local_coeff_matrix(&cover, &g, reps, 0, &chi).det())
        .collect();
    dets[1..].iter().all(|d| dets[0].equals(d))
}

/// The scattering row of an exceptional coset has a single nonzero entry,
/// on the diagonal, for every Weyl element.
pub fn exceptional_row_support_check() -> bool {
    use crate::rootdata::weyl_group;
    use crate::symlcm::ops::scattering_matrix;
    use crate::symlcm::whittaker::exceptional_point;
    for cover in [sc_cover(Family::A, 1, 3), kp_cover(2, 0)] {
        let space = coset_space(&cover, 1000);
        let mut reps = space.reps.clone().unwrap();
        let z = match exceptional_point(&cover) {
            Some(z) => z,
            None => return false,
        };
        let z_rep = space.rep(&z);
        let z_idx = reps.iter().position(|r| *r == z_rep).unwrap();
        reps[z_idx] = z;
        let ring = ring_for_cover(&cover);
        let g = Gens::new(&ring);
        let chi = Character::base(&cover);
        for w in weyl_group(&cover.datum, 100).unwrap() {
            let s = scattering_matrix(&cover, &g, &reps, &w, &chi);
            for c in 0..reps.len() {
                if c != z_idx && !s.at(z_idx, c).is_zero() {
                    return false;
                }
            }
            if s.at(z_idx, z_idx).is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn run_suite(name: &str) -> Option<SuiteReport> {
    match name {
        "table1" => Some(suite_table1()),
        "table2" => Some(suite_table2()),
        "poincare6" => Some(suite_poincare6()),
        "tm1" => Some(suite_tm1()),
        "trace" => Some(suite_trace()),
        "cs" => Some(suite_cs()),
        "naivels" => Some(suite_naivels()),
        "gl2" => Some(suite_gl2()),
        "properties" => Some(suite_properties()),
        _ => None,
    }
}

pub const SUITES: &[&str] =
    &["table1", "table2", "poincare6", "tm1", "trace", "cs", "naivels", "gl2", "properties"];

/// Convenience for the CLI: build a cover datum from family name pieces.
pub fn cover_from_parts(
    family: &str,
    rank: usize,
    q_short: i64,
    d_matrix: Option<IntMatrix>,
    n: u64,
) -> Result<CoverDatum, String> {
    let label = match family {
        "A" => RootLabel::SimplyConnected { family: Family::A, rank },
        "B" => RootLabel::SimplyConnected { family: Family::B, rank },
        "C" | "Sp" => RootLabel::SimplyConnected { family: Family::C, rank },
        "D" => RootLabel::SimplyConnected { family: Family::D, rank },
        "E6" => RootLabel::SimplyConnected { family: Family::E6, rank: 6 },
        "E7" => RootLabel::SimplyConnected { family: Family::E7, rank: 7 },
        "E8" => RootLabel::SimplyConnected { family: Family::E8, rank: 8 },
        "F4" => RootLabel::SimplyConnected { family: Family::F4, rank: 4 },
        "G2" => RootLabel::SimplyConnected { family: Family::G2, rank: 2 },
        "SL2" => RootLabel::SimplyConnected { family: Family::A, rank: 1 },
        "SOodd" => RootLabel::SoOdd { rank },
        "GL" => RootLabel::Gl { rank },
        other => return Err(format!("unknown family {}", other)),
    };
    let datum = build_root_datum(label).map_err(|e| format!("{}", e))?;
    let bis = match d_matrix {
        Some(m) => m,
        None => standard_bisector(&datum, q_short),
    };
    CoverDatum::new(datum, bis, n).map_err(|e| format!("{}", e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_pass() {
        // a slice of the grid to keep unit tests quick; the full grid runs
        // in the acceptance suite
        let rep = table_suite("t", &[(Family::C, 2), (Family::A, 3), (Family::B, 3)], 12);
        assert!(rep.all_pass(), "{:?}", rep);
    }

    #[test]
    fn trichotomy_and_uniform() {
        assert!(sl2_trichotomy_check());
        assert!(gl2_uniform_check());
        assert!(example_422_check());
    }

    #[test]
    fn suite_names_resolve() {
        for s in SUITES {
            assert!(run_suite("nonexistent").is_none() || true);
            let _ = s;
        }
        assert!(run_suite("bogus").is_none());
    }
}
