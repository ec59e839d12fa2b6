//! Built-in consistency checks.

use super::commands::{count_row, CountRow, Engine, Outcome};
use super::output::{Record, Report};
use super::{CliError, SelftestArgs};
use crate::arith::{dirichlet_convolve, gcd_i128, primes_up_to, MultFun};
use crate::constants::mainterm::delta;
use crate::constants::{d_star_closed, d_star_direct, omega_p_direct, DStarClosed, LocalEngine};
use crate::fibration::{conic_forms, lambda_profile, Fiber};
use crate::nefcone::{alpha, vol_w0, GroupAction, PicLattice};
use crate::par::Par;
use crate::{q_to_f64, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The reference point counts shipped with the binary.
pub const GOLDEN_COUNTS: &str = include_str!("../../golden/counts.csv");

const GOLDEN_HEADER: &str = "B,n1,n_U,stratum_zero,stratum_x4";
const NAIVE_LIMIT: i64 = 500;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl SelftestItem {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        SelftestItem { name: name.to_string(), passed, detail: detail.into() }
    }

    fn from_result(name: &str, r: Result<String, String>) -> Self {
        match r {
            Ok(d) => Self::new(name, true, d),
            Err(d) => Self::new(name, false, d),
        }
    }
}

fn parse_golden(text: &str) -> Result<Vec<CountRow>, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == GOLDEN_HEADER => {}
        Some(h) => return Err(format!("bad header {h:?}, expected {GOLDEN_HEADER:?}")),
        None => return Err("empty file".into()),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || format!("line {}: cannot parse {line:?}", i + 2);
        if cells.len() != 5 {
            return Err(bad());
        }
        let bound: i64 = cells[0].parse().map_err(|_| bad())?;
        if bound < 1 {
            return Err(bad());
        }
        let v: Vec<u64> = cells[1..].iter().map(|c| c.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        rows.push(CountRow { bound, n1: v[0], n_u: v[1], stratum_zero: v[2], stratum_x4: v[3] });
    }
    if rows.is_empty() {
        return Err("no data rows".into());
    }
    Ok(rows)
}

fn check_counts(golden: &[CountRow], engine: Engine, limit: i64) -> Result<String, String> {
    let mut checked = 0;
    for g in golden.iter().filter(|g| g.bound <= limit) {
        let got = count_row(g.bound, engine, Par::Rayon).map_err(|e| format!("B = {}: {e}", g.bound))?;
        if got != *g {
            return Err(format!("B = {}: expected {g:?}, computed {got:?}", g.bound));
        }
        checked += 1;
    }
    if checked == 0 {
        return Err(format!("no golden rows with B <= {limit}"));
    }
    Ok(format!("{checked} bounds match"))
}

fn check_lambda(samples: u32) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a4bda);
    let mut done = 0;
    while done < samples {
        let (a, b) = (rng.random_range(1..=400i64), rng.random_range(1..=400i64));
        let Ok(f) = Fiber::new(a, b) else { continue };
        let (s, t) = (rng.random_range(-1_000_000i128..=1_000_000), rng.random_range(1..=1_000_000i128));
        if gcd_i128(s, t) != 1 {
            continue;
        }
        let (q1, q2, _) = conic_forms(&f, s, t);
        let p = lambda_profile(&f, s, t).map_err(|e| e.to_string())?;
        if p.lambda() != gcd_i128(q1, q2) {
            return Err(format!(
                "(a, b, s, t) = ({a}, {b}, {s}, {t}): profile {} vs gcd {}",
                p.lambda(),
                gcd_i128(q1, q2)
            ));
        }
        done += 1;
    }
    Ok(format!("{samples} random (a, b, s, t)"))
}

fn check_dstar(quick: bool) -> Result<String, String> {
    // (p, n, mu, nu, c, d)
    let mut cases: Vec<(u64, u32, u32, u32, i128, i128)> = vec![
        (3, 4, 0, 0, 1, 1),
        (5, 4, 0, 0, 2, 3),
        (2, 6, 0, 0, 3, 5),
        (2, 9, 3, 1, 1, 5),
        (3, 7, 1, 0, 1, 2),
        (5, 6, 1, 0, 1, 2),
    ];
    if !quick {
        cases.extend([(7, 4, 0, 0, 1, 3), (2, 10, 4, 1, 1, 1), (3, 8, 2, 0, 1, 2)]);
    }
    let mut max_gap = 0.0f64;
    for (p, n, mu, nu, c, d) in cases {
        let label = format!("D*_{{{mu},{nu}}}({p}^{n}; c={c}, d={d})");
        let direct = d_star_direct(p, n, mu, nu, c, d).map_err(|e| format!("{label}: {e}"))?;
        match d_star_closed(p, mu, nu, c, d).map_err(|e| format!("{label}: {e}"))? {
            DStarClosed::Exact(q) if q != direct => {
                return Err(format!("{label}: direct {direct} vs closed form {q}"));
            }
            DStarClosed::Exact(_) => {}
            DStarClosed::MainTerm(q) => {
                let gap = (q_to_f64(direct) - q_to_f64(q)).abs();
                let allowed = 10.0 * (p as f64).powi(-(n as i32 - mu as i32 - 2));
                if gap > allowed {
                    return Err(format!("{label}: gap {gap:e} exceeds {allowed:e}"));
                }
                max_gap = max_gap.max(gap);
            }
        }
    }
    Ok(format!("closed forms hold; largest main-term gap {max_gap:.3e}"))
}

fn check_vol_w0() -> Result<String, String> {
    let v = vol_w0();
    if v == Q::new(1, 72) {
        Ok("vol(W0) = 1/72".into())
    } else {
        Err(format!("vol(W0) = {v}, expected 1/72"))
    }
}

fn check_alpha() -> Result<String, String> {
    let q4 = PicLattice::new(4).map_err(|e| e.to_string())?;
    let q3 = PicLattice::new(3).map_err(|e| e.to_string())?;
    let conj = GroupAction::conj_q_i(&q4).map_err(|e| e.to_string())?;
    let cases = [
        ("quartic trivial", GroupAction::trivial(), 4, Q::new(1, 180)),
        ("quartic conj-q-i", conj, 4, Q::new(1, 36)),
        ("quartic full", GroupAction::full_weyl(&q4), 4, Q::from_integer(1)),
        ("cubic trivial", GroupAction::trivial(), 3, Q::new(1, 120)),
        ("cubic full", GroupAction::full_weyl(&q3), 3, Q::from_integer(1)),
    ];
    for (label, action, degree, want) in cases {
        let got = alpha(&action, degree).map_err(|e| format!("{label}: {e}"))?.alpha;
        if got != want {
            return Err(format!("{label}: alpha = {got}, expected {want}"));
        }
    }
    Ok("5 reference actions".into())
}

fn check_h(quick: bool) -> Result<String, String> {
    let pmax = if quick { 30 } else { 97 };
    let numax = if quick { 5 } else { 10 };
    let mut n_checked = 0;
    for p in primes_up_to(pmax) {
        for nu in 0..=numax {
            let n = (p as u128).pow(nu);
            let conv = dirichlet_convolve(MultFun::H, MultFun::Tau, n).map_err(|e| e.to_string())?;
            let g = MultFun::G.at_prime_power(p as u128, nu);
            if conv != g {
                return Err(format!("(h * tau)({p}^{nu}) = {conv}, g = {g}"));
            }
            let one_h = dirichlet_convolve(MultFun::One, MultFun::H, n).map_err(|e| e.to_string())?;
            if one_h != MultFun::OneStarH.at_prime_power(p as u128, nu) {
                return Err(format!("(1 * h)({p}^{nu}) disagrees with its tabulation"));
            }
            n_checked += 1;
        }
    }
    for n in 1..=if quick { 200u128 } else { 2000 } {
        let conv = dirichlet_convolve(MultFun::H, MultFun::Tau, n).map_err(|e| e.to_string())?;
        let g = MultFun::G.eval(n).map_err(|e| e.to_string())?;
        if conv != g {
            return Err(format!("(h * tau)({n}) = {conv}, g = {g}"));
        }
        n_checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xde17a);
    let mut fibers = 0;
    while fibers < 10_000 {
        let Ok(f) = Fiber::new(rng.random_range(1..=5000), rng.random_range(1..=5000)) else { continue };
        let (a, b) = (f.a() as i128, f.b() as i128);
        let nu2 = (a.pow(4) - b.pow(4)).abs().trailing_zeros();
        let g = MultFun::G.at_prime_power(2, nu2);
        if Q::from_integer(delta(&f) as i128) != g {
            return Err(format!("delta({a}, {b}) = {} but g(2^{nu2}) = {g}", delta(&f)));
        }
        fibers += 1;
    }
    Ok(format!("{n_checked} arguments of h * tau = g; delta = g(2^v2) on {fibers} fibers"))
}

fn check_local(quick: bool) -> Result<String, String> {
    let top = if quick { 5 } else { 7 };
    for (p, from, want) in [(3u64, 2u32, Q::new(44, 27)), (2, 4, Q::from_integer(3))] {
        for n in from..=top {
            let w = omega_p_direct(p, n, LocalEngine::Fibered).map_err(|e| e.to_string())?;
            if w != want {
                return Err(format!("omega*({p}^{n}) = {w}, expected {want}"));
            }
        }
    }
    Ok(format!("omega*_3 = 44/27 and omega*_2 = 3 up to n = {top}"))
}

/// Run every check. `golden` is the text of a counts table in the format of
/// [`GOLDEN_COUNTS`].
pub fn selftest(quick: bool, golden: &str) -> Vec<SelftestItem> {
    let mut items = Vec::new();
    match parse_golden(golden) {
        Ok(rows) => {
            let naive_limit = if quick { 200 } else { NAIVE_LIMIT };
            items.push(SelftestItem::from_result(
                "golden-counts-naive",
                check_counts(&rows, Engine::Naive, naive_limit),
            ));
            items.push(SelftestItem::from_result("golden-counts-fast", check_counts(&rows, Engine::Fast, i64::MAX)));
        }
        Err(e) => items.push(SelftestItem::new("golden-counts", false, format!("malformed golden file: {e}"))),
    }
    items.push(SelftestItem::from_result("lambda-profile", check_lambda(if quick { 10_000 } else { 100_000 })));
    items.push(SelftestItem::from_result("dstar-closed-forms", check_dstar(quick)));
    items.push(SelftestItem::from_result("vol-w0", check_vol_w0()));
    items.push(SelftestItem::from_result("alpha-reference", check_alpha()));
    items.push(SelftestItem::from_result("h-identities", check_h(quick)));
    items.push(SelftestItem::from_result("local-plateau", check_local(quick)));
    items
}

pub(super) fn selftest_command(a: &SelftestArgs) -> Result<Outcome, CliError> {
    let golden = match &a.golden {
        Some(path) => std::fs::read_to_string(path)?,
        None => GOLDEN_COUNTS.to_string(),
    };
    let items = selftest(a.quick, &golden);
    let mut report = Report::new(
        "selftest",
        Record::new().with("quick", a.quick).with("golden", a.golden.as_ref().map(|p| p.display().to_string())),
    );
    let failed: Vec<&str> = items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
    for it in &items {
        eprintln!("{} {}: {}", if it.passed { "PASS" } else { "FAIL" }, it.name, it.detail);
        report.rows.push(
            Record::new()
                .with("item", it.name.as_str())
                .with("status", if it.passed { "pass" } else { "fail" })
                .with("detail", it.detail.as_str()),
        );
    }
    report.summary =
        Record::new().with("passed", failed.is_empty()).with("n_items", items.len()).with("n_failed", failed.len());
    let outcome = if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("selftest failed: {}", failed.join(", "))))
    };
    Ok((report, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_table_parses() {
        let rows = parse_golden(GOLDEN_COUNTS).unwrap();
        assert_eq!(rows[0], CountRow { bound: 50, n_u: 1016, n1: 103, stratum_zero: 192, stratum_x4: 0 });
        assert!(parse_golden("B,n_U\n1,2\n").is_err());
        assert!(parse_golden(&format!("{GOLDEN_HEADER}\n50,x,1016,192,0\n")).is_err());
        assert!(parse_golden(&format!("{GOLDEN_HEADER}\n")).is_err());
    }

    #[test]
    fn corrupted_golden_row_is_named() {
        let bad = format!("{GOLDEN_HEADER}\n50,103,1017,192,0\n");
        let rows = parse_golden(&bad).unwrap();
        let err = check_counts(&rows, Engine::Fast, i64::MAX).unwrap_err();
        assert!(err.contains("B = 50"), "{err}");
    }

    #[test]
    fn cheap_checks_pass() {
        assert!(check_vol_w0().is_ok());
        check_alpha().unwrap();
        check_h(true).unwrap();
        check_lambda(500).unwrap();
    }
}
