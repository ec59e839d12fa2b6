//! One line per acceptance criterion; exits nonzero if any criterion fails.
//! Time budgets are part of each criterion.

use delpezzo::arith::{dirichlet_convolve, gcd_i128, primes_up_to, MultFun};
use delpezzo::cli::{count_row, Engine, GOLDEN_COUNTS};
use delpezzo::constants::mainterm::delta;
use delpezzo::constants::{
    c_star, d_star_closed, d_star_direct, main_term_h, omega_inf_leray, omega_p_direct, omega_p_series, sigma_infinity,
    CStarConfig, DStarClosed, Estimate, LocalEngine, QuadratureConfig, ZETA_2,
};
use delpezzo::fibration::{
    conic_forms, fiber_count_naive, fiber_count_param, lambda_profile, Fiber, FiberPoint, Filter,
};
use delpezzo::nefcone::{alpha, vol_w0, GroupAction, PicLattice};
use delpezzo::par::Par;
use delpezzo::surface::count_naive;
use delpezzo::{q_to_f64, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cell::OnceCell;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn golden_n_u(bound: i64) -> Option<u64> {
    GOLDEN_COUNTS.lines().skip(1).find_map(|l| {
        let cells: Vec<&str> = l.split(',').collect();
        (cells[0].parse::<i64>().ok()? == bound).then(|| cells[2].parse().ok())?
    })
}

fn cross_engine_counts() -> Outcome {
    let mut parts = Vec::new();
    for b in [50, 100, 200, 500] {
        let naive = count_naive(b, Par::Rayon).map_err(err)?.n_u;
        let fast = count_row(b, Engine::Fast, Par::Rayon).map_err(err)?.n_u;
        ensure(naive == fast, || format!("B = {b}: naive {naive} vs fast {fast}"))?;
        let golden = golden_n_u(b).ok_or_else(|| format!("B = {b} missing from the golden file"))?;
        ensure(naive == golden, || format!("B = {b}: computed {naive} vs golden {golden}"))?;
        parts.push(format!("{b}:{naive}"));
    }
    Ok(format!("n_U {}", parts.join(" ")))
}

fn sorted(mut v: Vec<FiberPoint>) -> Vec<FiberPoint> {
    v.sort();
    v
}

fn fiber_parametrisation() -> Outcome {
    const H: i64 = 200;
    let f21 = Fiber::new(2, 1).map_err(err)?;
    let spot: Vec<(i64, i64, i64)> =
        sorted(fiber_count_param(&f21, 10, Filter::MHat).map_err(err)?).iter().map(|p| (p.x, p.y, p.z)).collect();
    ensure(spot == vec![(1, 5, 8), (3, 1, 4)], || format!("fiber (2, 1), H = 10: {spot:?}"))?;
    let mut fibers = 0;
    let mut comparisons = 0;
    for a in 1..=30 {
        for b in 1..=30 {
            let Ok(f) = Fiber::new(a, b) else { continue };
            fibers += 1;
            for filter in [Filter::M, Filter::MHat, Filter::MTilde] {
                let all = sorted(fiber_count_naive(&f, H, filter).map_err(err)?);
                for h in 1..=H {
                    let naive: Vec<FiberPoint> = all.iter().copied().filter(|p| p.x.max(p.y) <= h).collect();
                    let param = sorted(fiber_count_param(&f, h, filter).map_err(err)?);
                    ensure(naive == param, || {
                        format!(
                            "fiber ({a}, {b}), H = {h}, {filter:?}: naive {} points, param {}",
                            naive.len(),
                            param.len()
                        )
                    })?;
                    comparisons += 1;
                }
            }
        }
    }
    Ok(format!("{fibers} fibers x 3 filters x H = 1..{H} ({comparisons} multisets); spot value holds"))
}

fn lambda_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_231);
    let mut n = 0;
    while n < 100_000 {
        let Ok(f) = Fiber::new(rng.random_range(1..=10_000), rng.random_range(1..=10_000)) else { continue };
        let (s, t) = (rng.random_range(-1_000_000_000i128..=1_000_000_000), rng.random_range(1..=1_000_000_000i128));
        if gcd_i128(s, t) != 1 {
            continue;
        }
        let (q1, q2, _) = conic_forms(&f, s, t);
        let p = lambda_profile(&f, s, t).map_err(err)?;
        ensure(p.lambda() == gcd_i128(q1, q2), || format!("{f:?}, (s, t) = ({s}, {t})"))?;
        n += 1;
    }
    Ok(format!("{n} samples"))
}

fn volume_w0() -> Outcome {
    let v = vol_w0();
    ensure(v == Q::new(1, 72), || format!("vol(W0) = {v}"))?;
    Ok(format!("vol(W0) = {v}"))
}

fn alpha_values() -> Outcome {
    let q4 = PicLattice::new(4).map_err(err)?;
    let q3 = PicLattice::new(3).map_err(err)?;
    let cases = [
        ("degree 4 trivial", GroupAction::trivial(), 4, Q::new(1, 180)),
        ("degree 4 conjugation", GroupAction::conj_q_i(&q4).map_err(err)?, 4, Q::new(1, 36)),
        ("full W(D5)", GroupAction::full_weyl(&q4), 4, Q::from_integer(1)),
        ("degree 3 trivial", GroupAction::trivial(), 3, Q::new(1, 120)),
        ("full W(E6)", GroupAction::full_weyl(&q3), 3, Q::from_integer(1)),
    ];
    let mut parts = Vec::new();
    for (label, action, degree, want) in cases {
        let got = alpha(&action, degree).map_err(err)?.alpha;
        ensure(got == want, || format!("{label}: {got}, expected {want}"))?;
        parts.push(format!("{label} {got}"));
    }
    Ok(parts.join(", "))
}

fn d_star_forms() -> Outcome {
    let mut checked = 0;
    for p in [3u64, 5, 7] {
        let units: Vec<i128> = (1..p as i128).collect();
        // Above 10^6 one unit per square class: rescaling x or y by a unit
        // permutes the solutions.
        let non_residue = (2..p as i128).find(|&u| (1..p as i128).all(|x| (x * x - u) % p as i128 != 0)).unwrap();
        let classes = [1, non_residue];
        for n in 1..=8 {
            let pool: &[i128] = if p.pow(n) > 1_000_000 { &classes } else { &units };
            for &c in pool {
                for &d in pool {
                    let want = d_star_closed(p, 0, 0, c, d).map_err(err)?;
                    let got = d_star_direct(p, n, 0, 0, c, d).map_err(err)?;
                    ensure(want == DStarClosed::Exact(got), || {
                        format!("p = {p}, n = {n}, (c, d) = ({c}, {d}): {got}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    // c + d = 0 and 2 mod 8, mu = nu = 0. The count reduces modulo 2^{n-2},
    // so n >= 3.
    for n in 3..=12 {
        for (c, d) in [(1, 7), (3, 5), (5, 3), (1, 1), (3, 7), (5, 5), (7, 3)] {
            let got = d_star_direct(2, n, 0, 0, c, d).map_err(err)?;
            ensure(got == Q::from_integer(1), || format!("2^{n}, (c, d) = ({c}, {d}): {got}"))?;
            checked += 1;
        }
    }
    // mu >= 3, nu = 1, 2^{mu-1} c + d = 1 mod 8, n > mu.
    for mu in 3..=6u32 {
        for c in [1i128, 3, 5, 7] {
            let d = (1 - (c << (mu - 1))).rem_euclid(8);
            for n in mu + 1..=mu + 7 {
                let got = d_star_direct(2, n, mu, 1, c, d).map_err(err)?;
                ensure(got == Q::from_integer(mu as i128), || format!("mu = {mu}, 2^{n}, (c, d) = ({c}, {d}): {got}"))?;
                checked += 1;
            }
        }
    }
    let mut worst = 0.0f64;
    for p in [3u64, 5, 7] {
        // d with 2d a nonzero square mod p.
        for d in (1..p as i128).filter(|&d| (1..p as i128).any(|x| (x * x - 2 * d) % p as i128 == 0)) {
            for mu in 1..=4u32 {
                let closed = d_star_closed(p, mu, 0, 1, d).map_err(err)?.value();
                let got = d_star_direct(p, 8, mu, 0, 1, d).map_err(err)?;
                let scaled = (q_to_f64(got) - q_to_f64(closed)).abs() * (p as f64).powi(8 - mu as i32 - 2);
                ensure(scaled <= 10.0, || format!("p = {p}, mu = {mu}, d = {d}: scaled gap {scaled}"))?;
                worst = worst.max(scaled);
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cases; largest scaled main-term gap {worst:.3}"))
}

fn local_reconciliation() -> Outcome {
    let mut parts = Vec::new();
    let mut failures = Vec::new();
    for p in [2u64, 3, 5] {
        let direct = omega_p_direct(p, 8, LocalEngine::Fibered).map_err(err)?;
        let series = omega_p_series(p, 6).map_err(err)?;
        let gap = (q_to_f64(direct) - q_to_f64(series)).abs();
        parts.push(format!("p = {p}: direct {direct}, series {:.6}, gap {gap:.2e}", q_to_f64(series)));
        if gap > 1e-3 {
            failures.push(p);
        }
    }
    let detail = parts.join("; ");
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("gap above 1e-3 at p in {failures:?}: {detail}"))
    }
}

fn archimedean(sigma: Estimate) -> Outcome {
    let leray = omega_inf_leray(10_000_000, 1, Par::Rayon).estimate;
    let target = sigma.scale(16.0);
    let bars_ok = leray.error_bar <= 0.01 * leray.value && target.error_bar <= 0.01 * target.value;
    let detail = format!(
        "leray {:.6} +- {:.2e}, 16 sigma {:.6} +- {:.2e}",
        leray.value, leray.error_bar, target.value, target.error_bar
    );
    ensure(bars_ok, || format!("error bars above 1%: {detail}"))?;
    ensure(leray.agrees_with(&target), || format!("disagree: {detail}"))?;
    Ok(detail)
}

fn manin_ratio(sigma: Estimate) -> Outcome {
    let cs = c_star(CStarConfig::default());
    let c = 16.0 * cs.value * sigma.value / (27.0 * ZETA_2);
    let mut ratios = Vec::new();
    for b in [1_000i64, 10_000, 100_000] {
        let n_u = count_row(b, Engine::Fast, Par::Rayon).map_err(err)?.n_u as f64;
        let bf = b as f64;
        ratios.push((b, n_u / (bf * bf.ln().powi(4))));
    }
    let detail = format!(
        "c_XH = {c:.6e}; ratios {}",
        ratios.iter().map(|(b, r)| format!("B={b}: {r:.6e} ({:.2} c)", r / c)).collect::<Vec<_>>().join(", ")
    );
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &(_, r)| (l.min(r), h.max(r)));
    ensure(lo > 0.0 && hi.is_finite(), || format!("non-positive ratio: {detail}"))?;
    ensure(hi / lo < 3.0, || format!("spread {:.2} >= 3: {detail}", hi / lo))?;
    ensure(ratios.iter().all(|&(_, r)| r / c < 10.0 && c / r < 10.0), || format!("not within 10x of c: {detail}"))?;
    Ok(detail)
}

fn multiplicative() -> Outcome {
    let mut n = 0;
    for p in primes_up_to(97) {
        for nu in 0..=10u32 {
            let conv = dirichlet_convolve(MultFun::H, MultFun::Tau, (p as u128).pow(nu)).map_err(err)?;
            let g = MultFun::G.at_prime_power(p as u128, nu);
            ensure(conv == g, || format!("(h * tau)({p}^{nu}) = {conv}, g = {g}"))?;
            n += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    let mut fibers = 0;
    while fibers < 10_000 {
        let Ok(f) = Fiber::new(rng.random_range(1..=20_000), rng.random_range(1..=20_000)) else { continue };
        let (a, b) = (f.a() as i128, f.b() as i128);
        let v = (a.pow(4) - b.pow(4)).abs().trailing_zeros();
        let g = MultFun::G.at_prime_power(2, v);
        ensure(Q::from_integer(delta(&f) as i128) == g, || {
            format!("delta({a}, {b}) = {} vs g(2^{v}) = {g}", delta(&f))
        })?;
        fibers += 1;
    }
    Ok(format!("{n} prime powers; delta on {fibers} fibers"))
}

fn main_term_fiber() -> Outcome {
    let h = main_term_h(&Fiber::new(2, 1).map_err(err)?, Q::from_integer(1_000_000_000)).map_err(err)?;
    ensure(h == Q::new(5, 2), || format!("h = {h}"))?;
    Ok(format!("h((2, 1); 10^9) = {h}"))
}

struct Criterion<'a> {
    id: u32,
    name: &'static str,
    /// Seconds.
    budget: u64,
    run: Box<dyn Fn() -> Outcome + 'a>,
}

fn main() {
    let sigma: OnceCell<Estimate> = OnceCell::new();
    let sigma = || *sigma.get_or_init(|| sigma_infinity(QuadratureConfig::default()));
    let criteria: Vec<Criterion> = vec![
        Criterion { id: 1, name: "cross-engine exact counts", budget: 300, run: Box::new(cross_engine_counts) },
        Criterion { id: 2, name: "fiber parametrisation exactness", budget: 120, run: Box::new(fiber_parametrisation) },
        Criterion { id: 3, name: "lambda lemma", budget: 30, run: Box::new(lambda_lemma) },
        Criterion { id: 4, name: "vol(W0)", budget: 1, run: Box::new(volume_w0) },
        Criterion { id: 5, name: "alpha values", budget: 10, run: Box::new(alpha_values) },
        Criterion { id: 6, name: "D* closed forms", budget: 60, run: Box::new(d_star_forms) },
        Criterion { id: 7, name: "local density reconciliation", budget: 120, run: Box::new(local_reconciliation) },
        Criterion { id: 8, name: "archimedean identity", budget: 300, run: Box::new(|| archimedean(sigma())) },
        Criterion { id: 9, name: "Manin-ratio diagnostic", budget: 600, run: Box::new(|| manin_ratio(sigma())) },
        Criterion { id: 10, name: "multiplicative identities", budget: 10, run: Box::new(multiplicative) },
        Criterion { id: 11, name: "main-term h at (2, 1)", budget: 1, run: Box::new(main_term_fiber) },
    ];
    let mut failed = Vec::new();
    for Criterion { id, name, budget, run } in &criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > Duration::from_secs(*budget) => Err(format!("over budget: {d}")),
            o => o,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {id:>2} {status} {name} [{:.2} s / {budget} s]: {detail}", took.as_secs_f64());
        if outcome.is_err() {
            failed.push(*id);
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
