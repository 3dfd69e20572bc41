//! Seeded randomized sweeps over parameter tuples.
//!
//! Tuples are drawn from a ChaCha stream per suite, so a given seed always
//! yields the same tuples and the same report. Tuples are checked in
//! parallel; results are gathered in tuple order. `BI_LAB_THREADS` caps the
//! worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bi_operator::{casimir_scalar, casimir_value, check_bi_relations, BIParams};
use crate::bi_poly::{
    bi_from_operator, bi_hypergeometric, bi_recurrence_all, ladder_coeffs, ladder_v_check, orthogonality_check,
    polynomial_oracle_check,
};
use crate::dirac::{dirac_suite, DiracParams};
use crate::exact::Rat;
use crate::racah::{
    build_tridiag_rep, central_extension_check, k1_spectrum_check, racah_overlaps, tensor_oracle, verify_tridiag_rep,
    RacahParams,
};
use crate::report::VerificationReport;
use crate::sl1::{dunkl_commutator_check, module_bilinear_check, osp_casimir_check, ModuleParams};

pub const DEFAULT_SEED: u64 = 7;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "BI_LAB_THREADS";

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Rational `p/q` with `q <= max_den` and `lo < p/q <= hi` (bounds as `a/b`).
fn random_rat(rng: &mut ChaCha8Rng, lo: (i64, i64), hi: (i64, i64), max_den: i64) -> Rat {
    let q = rng.gen_range(1..=max_den);
    // lo < p/q <=> p > lo.0 q / lo.1
    let p_min = (lo.0 * q).div_euclid(lo.1) + 1;
    let p_max = (hi.0 * q).div_euclid(hi.1);
    Rat::frac(rng.gen_range(p_min..=p_max.max(p_min)), q)
}

/// Arbitrary `(ρ1, ρ2, r1, r2)` in `(-2, 2]`.
pub fn random_bi_params(seed: u64, count: usize) -> Vec<BIParams> {
    let mut rng = rng_for(seed, 1);
    (0..count)
        .map(|_| {
            let mut v = || random_rat(&mut rng, (-2, 1), (2, 1), 12);
            BIParams::new(v(), v(), v(), v())
        })
        .collect()
}

/// Tuples for which every polynomial construction up to degree `nmax` is
/// defined: nonvanishing denominators and a nondegenerate spectrum.
pub fn random_admissible_bi_params(seed: u64, count: usize, nmax: usize) -> Vec<BIParams> {
    let mut rng = rng_for(seed, 2);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut v = || random_rat(&mut rng, (-2, 1), (2, 1), 12);
        let p = BIParams::new(v(), v(), v(), v());
        let ok = bi_recurrence_all(&p, nmax + 1).is_ok()
            && (0..=nmax).all(|n| bi_hypergeometric(&p, n).is_ok() && ladder_coeffs(&p, n).is_ok())
            && bi_from_operator(&p, nmax + 1).is_ok();
        if ok {
            out.push(p);
        }
    }
    out
}

pub fn random_module_params(seed: u64, count: usize) -> Vec<ModuleParams> {
    let mut rng = rng_for(seed, 3);
    (0..count)
        .map(|_| {
            let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
            let mu = random_rat(&mut rng, (-1, 2), (3, 1), 12);
            ModuleParams::new(eps, mu).expect("mu drawn above -1/2")
        })
        .collect()
}

/// Unitary Racah tuples `(μ1, μ2, μ3, N)` with `N <= nmax`.
pub fn random_racah_params(seed: u64, count: usize, nmax: usize) -> Vec<RacahParams> {
    let mut rng = rng_for(seed, 4);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut v = || random_rat(&mut rng, (-1, 2), (5, 2), 6);
        let (m1, m2, m3) = (v(), v(), v());
        let n = rng.gen_range(0..=nmax);
        if let Ok(rp) = RacahParams::new(m1, m2, m3, n) {
            if build_tridiag_rep(&rp).is_ok() {
                out.push(rp);
            }
        }
    }
    out
}

pub fn random_dirac_params(seed: u64, count: usize) -> Vec<DiracParams> {
    let mut rng = rng_for(seed, 5);
    (0..count)
        .map(|_| {
            let mut v = || random_rat(&mut rng, (-1, 2), (2, 1), 8);
            DiracParams::new(v(), v(), v()).expect("mu drawn above -1/2")
        })
        .collect()
}

/// Thread count from `BI_LAB_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|n: &usize| *n > 0)
}

/// Maps `f` over `items` in parallel, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    match thread_cap() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
            Err(_) => items.iter().map(f).collect(),
        },
        None => items.par_iter().map(f).collect(),
    }
}

fn gather(name: &str, reports: Vec<VerificationReport>) -> VerificationReport {
    let mut out = VerificationReport::new(name);
    for r in reports {
        out.absorb(r);
    }
    out
}

fn bi_label(p: &BIParams) -> String {
    format!("({}, {}, {}, {})", p.rho1(), p.rho2(), p.r1(), p.r2())
}

fn racah_label(rp: &RacahParams) -> String {
    format!("mu=({}, {}, {}) N={}", rp.mu1(), rp.mu2(), rp.mu3(), rp.n())
}

/// The three algebra relations on monomials up to `maxdeg` and the Casimir
/// value. `corrupt` shifts `ω3` by one to exercise the failure path.
pub fn bi_relation_suite(seed: u64, tuples: usize, maxdeg: usize, corrupt: bool) -> VerificationReport {
    let params = random_bi_params(seed, tuples);
    let reports = par_map(&params, |p| {
        let checked = if corrupt { p.with_corrupted_omega3() } else { p.clone() };
        let mut rep = check_bi_relations(&checked, maxdeg);
        rep.name = format!("BI relations {}", bi_label(p));
        match casimir_scalar(&checked, maxdeg) {
            Ok(c) => {
                rep.check_eq("Casimir = 2(rho1^2+rho2^2+r1^2+r2^2) - 1/4", maxdeg, &c, &casimir_value(p));
            }
            Err(e) => rep.push("Casimir = 2(rho1^2+rho2^2+r1^2+r2^2) - 1/4", maxdeg, e.to_string(), casimir_value(p), false),
        }
        rep
    });
    gather("BI relation suite", reports)
}

/// Recurrence, hypergeometric and operator constructions for `n <= nmax`,
/// eigen-equation for `n <= eig_max`.
pub fn polynomial_suite(seed: u64, tuples: usize, nmax: usize, eig_max: usize) -> VerificationReport {
    let params = random_admissible_bi_params(seed, tuples, nmax.max(eig_max));
    let reports = par_map(&params, |p| {
        let mut rep = polynomial_oracle_check(p, nmax, eig_max);
        rep.name = format!("oracles {}", bi_label(p));
        rep
    });
    gather("BI polynomial suite", reports)
}

pub fn ladder_suite(seed: u64, tuples: usize, nmax: usize) -> VerificationReport {
    let params = random_admissible_bi_params(seed, tuples, nmax + 1);
    let reports = par_map(&params, |p| {
        let mut rep = ladder_v_check(p, nmax);
        rep.name = format!("ladders {}", bi_label(p));
        rep
    });
    gather("ladder suite", reports)
}

pub fn sl1_suite(seed: u64, tuples: usize, nmax: usize) -> VerificationReport {
    let params = random_module_params(seed, tuples);
    let reports = par_map(&params, |m| {
        let mut rep = VerificationReport::new(format!("eps={} mu={}", m.epsilon(), m.mu()));
        rep.absorb(module_bilinear_check(m, nmax));
        rep.absorb(osp_casimir_check(m, nmax));
        if m.epsilon() == 1 {
            rep.absorb(dunkl_commutator_check(m.mu(), nmax));
        }
        rep
    });
    gather("sl_{-1}(2) suite", reports)
}

/// Exact representation checks for unitary tuples with `N <= nmax`.
pub fn racah_exact_suite(seed: u64, tuples: usize, nmax: usize) -> VerificationReport {
    let params = random_racah_params(seed, tuples, nmax);
    let reports = par_map(&params, |rp| {
        let mut rep = VerificationReport::new(racah_label(rp));
        match build_tridiag_rep(rp) {
            Ok(t) => rep.absorb(verify_tridiag_rep(&t, rp)),
            Err(e) => rep.push("build representation", rp.n(), e.to_string(), "representation", false),
        }
        rep
    });
    gather("Racah exact suite", reports)
}

/// `K1` spectra and overlap proportionality for tuples with `N <= nmax`.
pub fn racah_overlap_suite(seed: u64, tuples: usize, nmax: usize) -> VerificationReport {
    let params = random_racah_params(seed, tuples, nmax);
    let reports = par_map(&params, |rp| {
        let mut rep = VerificationReport::new(racah_label(rp));
        match build_tridiag_rep(rp) {
            Ok(t) => rep.absorb(k1_spectrum_check(&t, rp)),
            Err(e) => rep.push("build representation", rp.n(), e.to_string(), "representation", false),
        }
        match racah_overlaps(rp) {
            Ok(ov) => rep.absorb(ov.report),
            Err(e) => rep.push("overlaps", rp.n(), e.to_string(), "overlaps", false),
        }
        rep
    });
    gather("Racah overlap suite", reports)
}

/// Tensor-product oracle and central extension on slices `m <= mmax`, for the
/// fixed tuple `(1/4, 1/3, 1/2)`, the zero tuple and `tuples` random ones.
pub fn tensor_suite(seed: u64, tuples: usize, mmax: usize) -> VerificationReport {
    let mut params = vec![
        RacahParams::new(Rat::frac(1, 4), Rat::frac(1, 3), Rat::half(), 0).expect("valid"),
        RacahParams::new(Rat::zero(), Rat::zero(), Rat::zero(), 0).expect("valid"),
    ];
    params.extend(random_racah_params(seed, tuples, 0));
    let jobs: Vec<(RacahParams, usize)> =
        params.iter().flat_map(|rp| (0..=mmax).map(move |m| (rp.clone(), m))).collect();
    let reports = par_map(&jobs, |(rp, m)| {
        let mut rep = VerificationReport::new(format!("mu=({}, {}, {})", rp.mu1(), rp.mu2(), rp.mu3()));
        rep.absorb(tensor_oracle(rp, *m));
        rep.absorb(central_extension_check(rp, *m));
        rep
    });
    gather("tensor product suite", reports)
}

pub fn dirac_sweep(seed: u64, tuples: usize, maxdeg: u32) -> VerificationReport {
    let params = random_dirac_params(seed, tuples);
    let reports = par_map(&params, |dp| dirac_suite(dp, maxdeg));
    gather("Dunkl-Dirac suite", reports)
}

/// Finite orthogonality under the Racah-parametrized truncation, one tuple
/// per `N = 0..=nmax` plus `tuples` random ones.
pub fn orthogonality_suite(seed: u64, tuples: usize, nmax: usize) -> VerificationReport {
    let mut params: Vec<RacahParams> = (0..=nmax)
        .map(|n| RacahParams::new(Rat::frac(1, 4), Rat::frac(1, 3), Rat::half(), n).expect("valid"))
        .collect();
    params.extend(random_racah_params(seed ^ 0x5eed, tuples, nmax));
    let reports = par_map(&params, |rp| {
        let mut rep = orthogonality_check(&rp.identifications(), rp.n());
        rep.name = racah_label(rp);
        rep
    });
    gather("finite orthogonality suite", reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_bi_params(3, 5), random_bi_params(3, 5));
        assert_ne!(random_bi_params(3, 5), random_bi_params(4, 5));
        assert_eq!(random_racah_params(9, 4, 8), random_racah_params(9, 4, 8));
    }

    #[test]
    fn random_rats_respect_bounds() {
        let mut rng = rng_for(1, 0);
        for _ in 0..500 {
            let v = random_rat(&mut rng, (-1, 2), (5, 2), 6);
            assert!(v > Rat::frac(-1, 2) && v <= Rat::frac(5, 2), "{v}");
        }
    }

    #[test]
    fn small_suites_pass() {
        assert!(bi_relation_suite(1, 3, 5, false).passed());
        assert!(!bi_relation_suite(1, 3, 5, true).passed());
        assert!(polynomial_suite(1, 2, 5, 6).passed());
        assert!(ladder_suite(1, 2, 5).passed());
        assert!(sl1_suite(1, 3, 6).passed());
        assert!(racah_exact_suite(1, 3, 4).passed());
        assert!(racah_overlap_suite(1, 3, 4).passed());
        assert!(orthogonality_suite(1, 1, 3).passed());
    }

    #[test]
    fn same_seed_same_report() {
        let a = serde_json::to_string(&bi_relation_suite(5, 3, 4, false)).unwrap();
        let b = serde_json::to_string(&bi_relation_suite(5, 3, 4, false)).unwrap();
        assert_eq!(a, b);
    }
}
