use super::output::{Record, Report};
use super::{
    AlphaArgs, CliError, Command, CompareArgs, ConstantArgs, CountArgs, DstarArgs, LocalArgs, LocalEngineArg,
    MainTermArgs, SigmaMethod,
};
use crate::constants::{
    d_full, d_star_closed, d_star_direct, h0, main_term_h, main_term_predict, omega_h_from_star, peyre_assemble,
    CStarConfig, DStarClosed, LocalDensityReport, LocalEngine, PeyreBreakdown, PeyreConfig, QuadratureConfig,
    QuadratureMethod,
};
use crate::fibration::{count_n1_fast, Fiber};
use crate::nefcone::{alpha, GroupAction, PicLattice};
use crate::par::Par;
use crate::surface::{count_n1_naive, count_naive, strata_fast};
use crate::{q_to_f64, Q};
use clap::ValueEnum;
use std::time::Instant;

pub(super) type Outcome = (Report, Result<(), CliError>);

pub(super) fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    let report = match cmd {
        Command::Count(a) => count(a)?,
        Command::Compare(a) => compare(a)?,
        Command::Predict(a) => predict(a)?,
        Command::Local(a) => local(a)?,
        Command::Dstar(a) => dstar(a)?,
        Command::Alpha(a) => alpha_cmd(a)?,
        Command::MainTerm(a) => main_term(a)?,
        Command::Selftest(a) => return super::selftest::selftest_command(a),
    };
    Ok((report, Ok(())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Brute force over the surface (B <= 2000).
    Naive,
    /// Conic-bundle parametrisation plus exact strata.
    Fast,
}

/// One line of the golden-count table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRow {
    pub bound: i64,
    pub n_u: u64,
    pub n1: u64,
    pub stratum_zero: u64,
    pub stratum_x4: u64,
}

impl CountRow {
    pub fn record(&self) -> Record {
        Record::new()
            .with("B", self.bound)
            .with("n1", self.n1)
            .with("n_U", self.n_u)
            .with("stratum_zero", self.stratum_zero)
            .with("stratum_x4", self.stratum_x4)
    }
}

pub fn count_row(bound: i64, engine: Engine, par: Par) -> crate::Result<CountRow> {
    match engine {
        Engine::Naive => {
            let r = count_naive(bound, par)?;
            Ok(CountRow {
                bound,
                n_u: r.n_u,
                n1: count_n1_naive(bound, par)?,
                stratum_zero: r.stratum_zero,
                stratum_x4: r.stratum_x4,
            })
        }
        Engine::Fast => {
            let n1 = count_n1_fast(bound, par)?;
            let s = strata_fast(bound);
            Ok(CountRow { bound, n_u: 8 * n1 + s.zero + s.x4, n1, stratum_zero: s.zero, stratum_x4: s.x4 })
        }
    }
}

fn count(a: &CountArgs) -> Result<Report, CliError> {
    if a.engine == Engine::Naive {
        if let Some(b) = a.bound.iter().find(|&&b| b > 2000) {
            return Err(CliError::Usage(format!("--engine naive accepts bounds up to 2000, got {b}")));
        }
    }
    let engine = a.engine.to_possible_value().expect("named").get_name().to_string();
    let mut report = Report::new("count", Record::new().with("engine", engine).with("timing", a.timing));
    for &b in &a.bound {
        let start = Instant::now();
        let row = count_row(b, a.engine, Par::Rayon)?;
        let secs = start.elapsed().as_secs_f64();
        eprintln!("count: B = {b}  n_U = {}  ({secs:.2} s)", row.n_u);
        report.rows.push(row.record().with("seconds", a.timing.then_some(secs)));
    }
    Ok(report)
}

fn peyre_config(c: &ConstantArgs) -> Result<PeyreConfig, CliError> {
    let method = match c.sigma_method {
        SigmaMethod::Grid => {
            if !(c.tolerance > 0.0 && c.tolerance < 1.0) {
                return Err(CliError::Usage("--tolerance must lie in (0, 1)".into()));
            }
            QuadratureMethod::AdaptiveGrid { tolerance: c.tolerance }
        }
        SigmaMethod::Mc => QuadratureMethod::MonteCarlo { samples: c.samples, seed: c.seed },
    };
    Ok(PeyreConfig {
        cstar: CStarConfig { pmax: c.pmax, nucap: c.nucap },
        quadrature: QuadratureConfig { method, par: Par::Rayon },
        leray_samples: c.samples,
        seed: c.seed,
        par: Par::Rayon,
    })
}

fn constant_config(c: &ConstantArgs) -> Record {
    let method = c.sigma_method.to_possible_value().expect("named").get_name().to_string();
    let mut r = Record::new()
        .with("pmax", c.pmax)
        .with("nucap", c.nucap)
        .with("samples", c.samples)
        .with("seed", c.seed)
        .with("sigma_method", method);
    if c.sigma_method == SigmaMethod::Grid {
        r.push("tolerance", c.tolerance);
    }
    r
}

fn breakdown_record(b: &PeyreBreakdown) -> Record {
    Record::new()
        .with("alpha", b.alpha)
        .with("beta", b.beta as u64)
        .with("c_star", b.c_star)
        .with("sigma_inf", b.sigma_inf)
        .with("omega_inf", b.omega_inf)
        .with("tamagawa_product", b.tamagawa_product)
        .with("c_xh", b.c_xh)
        .with("c_xh_tamagawa", b.c_xh_tamagawa)
        .with("route_ratio", b.ratio)
        .with("routes_agree", b.routes_agree)
}

fn predict(c: &ConstantArgs) -> Result<Report, CliError> {
    let b = peyre_assemble(peyre_config(c)?)?;
    let mut report = Report::new("predict", constant_config(c));
    report.summary = breakdown_record(&b);
    Ok(report)
}

fn check_thetas(t1: f64, t2: f64) -> Result<(), CliError> {
    if t1 > 0.0 && t2 > 0.0 && t1 + t2 < 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage("need theta1, theta2 > 0 with theta1 + theta2 < 1".into()))
    }
}

fn compare(a: &CompareArgs) -> Result<Report, CliError> {
    check_thetas(a.theta1, a.theta2)?;
    let b = peyre_assemble(peyre_config(&a.constants)?)?;
    let c = b.c_xh.value;
    let mut config = constant_config(&a.constants).with("theta1", a.theta1).with("theta2", a.theta2);
    config.push("timing", a.timing);
    let mut report = Report::new("compare", config);
    report.summary = breakdown_record(&b);
    let mut ratios = Vec::new();
    for &bound in &a.bound {
        let start = Instant::now();
        let row = count_row(bound, super::Engine::Fast, Par::Rayon)?;
        let mt = main_term_predict(bound as u64, a.theta1, a.theta2, 1.0, b.c_star, Par::Rayon)?;
        let secs = start.elapsed().as_secs_f64();
        let bf = bound as f64;
        let ratio = row.n_u as f64 / (bf * bf.ln().powi(4));
        ratios.push(ratio);
        eprintln!("compare: B = {bound}  n_U = {}  ratio = {ratio:.6}  ({secs:.2} s)", row.n_u);
        report.rows.push(
            Record::new()
                .with("B", bound)
                .with("n_U", row.n_u)
                .with("ratio", ratio)
                .with("predicted_c", c)
                .with("ratio_over_c", ratio / c)
                .with("n1", row.n1)
                .with("n1_main_term_mid", (mt.n1_lower + mt.n1_upper) / 2.0)
                .with("n1_main_term_lower", mt.n1_lower)
                .with("n1_main_term_upper", mt.n1_upper)
                .with("seconds", a.timing.then_some(secs)),
        );
    }
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &r| (l.min(r), h.max(r)));
    report.summary.push("ratio_spread", hi / lo);
    Ok(report)
}

fn local(a: &LocalArgs) -> Result<Report, CliError> {
    let engine = match a.engine {
        LocalEngineArg::Fibered => LocalEngine::Fibered,
        LocalEngineArg::Raw => LocalEngine::Raw,
    };
    let direct = crate::constants::omega_p_direct(a.prime, a.n, engine)?;
    let rep = LocalDensityReport::compute(a.prime, a.n, a.cap)?;
    let name = a.engine.to_possible_value().expect("named").get_name().to_string();
    let mut report =
        Report::new("local", Record::new().with("p", a.prime).with("n", a.n).with("cap", a.cap).with("engine", name));
    report.summary = Record::new()
        .with("omega_star_direct", direct)
        .with("omega_star_direct_f64", q_to_f64(direct))
        .with("omega_star_series", rep.series)
        .with("omega_star_series_f64", q_to_f64(rep.series))
        .with("gap", (q_to_f64(direct) - q_to_f64(rep.series)).abs())
        .with("omega_h_direct", omega_h_from_star(a.prime, direct))
        .with("omega_h_series_f64", q_to_f64(omega_h_from_star(a.prime, rep.series)));
    Ok(report)
}

fn dstar(a: &DstarArgs) -> Result<Report, CliError> {
    let direct = d_star_direct(a.prime, a.n, a.mu, a.nu, a.c, a.d)?;
    let full = d_full(a.prime, a.n, a.mu, a.nu, a.c, a.d)?;
    let closed = d_star_closed(a.prime, a.mu, a.nu, a.c, a.d).ok();
    let mut report = Report::new(
        "dstar",
        Record::new().with("p", a.prime).with("n", a.n).with("mu", a.mu).with("nu", a.nu).with("c", a.c).with("d", a.d),
    );
    let (kind, value) = match closed {
        Some(DStarClosed::Exact(q)) => (Some("exact"), Some(q)),
        Some(DStarClosed::MainTerm(q)) => (Some("main_term"), Some(q)),
        None => (None, None),
    };
    report.summary = Record::new()
        .with("d_star", direct)
        .with("d_star_f64", q_to_f64(direct))
        .with("d_full", full)
        .with("closed_form_kind", kind)
        .with("closed_form", value)
        .with("discrepancy", value.map(|v| (q_to_f64(direct) - q_to_f64(v)).abs()));
    Ok(report)
}

/// Resolve `trivial`, `full`, `conj-q-i` or `file:<path>`.
pub(super) fn parse_action(spec: &str, pic: &PicLattice) -> Result<GroupAction, CliError> {
    match spec {
        "trivial" => Ok(GroupAction::trivial()),
        "full" => Ok(GroupAction::full_weyl(pic)),
        "conj-q-i" => Ok(GroupAction::conj_q_i(pic)?),
        _ => match spec.strip_prefix("file:") {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                Ok(GroupAction::parse_cycles(&text, pic.lines().len())?)
            }
            None => Err(CliError::Usage(format!(
                "unknown action {spec:?}; expected trivial, full, conj-q-i or file:<path>"
            ))),
        },
    }
}

fn alpha_cmd(a: &AlphaArgs) -> Result<Report, CliError> {
    let pic = PicLattice::new(a.degree)?;
    let action = parse_action(&a.action, &pic)?;
    let r = alpha(&action, a.degree)?;
    let mut report = Report::new("alpha", Record::new().with("degree", a.degree).with("action", a.action.clone()));
    report.summary = Record::new()
        .with("alpha_num", *r.alpha.numer())
        .with("alpha_den", *r.alpha.denom())
        .with("rank", r.rank)
        .with("n_rational_lines", r.n_rational_lines)
        .with("orbit_signature", r.orbit_signature)
        .with("normalization", r.normalization.name())
        .with("n_vertices", r.n_vertices);
    Ok(report)
}

fn parse_q(s: &str) -> Result<Q, CliError> {
    let bad = || CliError::Usage(format!("cannot parse {s:?} as a positive rational"));
    let q = match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i128, i128) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
            if d == 0 {
                return Err(bad());
            }
            Q::new(n, d)
        }
        None => Q::from_integer(s.trim().parse().map_err(|_| bad())?),
    };
    if q > Q::from_integer(0) {
        Ok(q)
    } else {
        Err(bad())
    }
}

fn main_term(a: &MainTermArgs) -> Result<Report, CliError> {
    if let Some(ab) = &a.fiber {
        if ab.len() != 2 {
            return Err(CliError::Usage("--fiber takes exactly two values a,b".into()));
        }
        let f = Fiber::new(ab[0], ab[1])?;
        let y = parse_q(&a.y)?;
        let mut report = Report::new("main-term", Record::new().with("a", ab[0]).with("b", ab[1]).with("y", y));
        report.summary = Record::new()
            .with("h", main_term_h(&f, y)?)
            .with("h0", h0(&f, y)?)
            .with("delta", crate::constants::mainterm::delta(&f));
        return Ok(report);
    }
    check_thetas(a.theta1, a.theta2)?;
    if a.k < 1.0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let cs = crate::constants::c_star(CStarConfig { pmax: a.constants.pmax, nucap: a.constants.nucap });
    let r = main_term_predict(a.bound, a.theta1, a.theta2, a.k, cs, Par::Rayon)?;
    let mut report = Report::new(
        "main-term",
        Record::new()
            .with("bound", a.bound)
            .with("theta1", a.theta1)
            .with("theta2", a.theta2)
            .with("k", a.k)
            .with("pmax", a.constants.pmax)
            .with("nucap", a.constants.nucap),
    );
    report.summary = Record::new()
        .with("c_star", cs)
        .with("sigma_direct", r.sigma_direct)
        .with("sigma_closed", r.sigma_closed)
        .with("vol_w0", r.vol_w0)
        .with("n1_lower", r.n1_lower)
        .with("n1_upper", r.n1_upper);
    Ok(report)
}
