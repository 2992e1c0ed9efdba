use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use planar_vacuum::dirac_coulomb::{
    bound_spectrum, binding_energy, make_channel, resonance_spectrum_massless, resonance_tau,
    solve_dived_resonance, Spin, SHARP_RESONANCE_SIGMA,
};
use planar_vacuum::massive_polarization::{
    fit_small_r_slope, q_m_coordinate, q_m_large_r_with, q_m_small_r, LargeRPrefactor, RealPolarizationModel,
    LARGE_MR_MIN, SLOPE_FIT_RANGE,
};
use planar_vacuum::numerics::{linear_grid, log_grid};
use planar_vacuum::specfun::{
    bessel_i, digamma, gamma, ln_gamma, trigamma, whittaker_m, whittaker_m_with_derivative, whittaker_w,
    whittaker_w_with_derivative, EULER_GAMMA,
};
use planar_vacuum::subcritical_charge::{effective_coupling_subcritical, q_ind, SeriesControl, TailAccel};
use planar_vacuum::supercritical_charge::{
    density_general, density_small_sigma, density_window, rg_closed_form, rg_flow, rg_invariant, screening_radius,
    sigma0, SupercriticalDensityPoint, RG_EVENT_OFFSET,
};
use planar_vacuum::{ComplexScalar, CoulombSystem, SpectrumKind};
use rayon::prelude::*;

use crate::table::{col, Cell, Table};
use crate::{CliError, OutputArgs};

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn header(table: &mut Table, command: &str) {
    table.meta("artifact", "planar-vacuum");
    table.meta("version", VERSION);
    table.meta("command", command);
}

fn spin_label(s: Spin) -> &'static str {
    match s {
        Spin::Up => "+1",
        Spin::Down => "-1",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridKind {
    Log,
    Linear,
}

impl GridKind {
    fn name(self) -> &'static str {
        match self {
            GridKind::Log => "log",
            GridKind::Linear => "linear",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Smallest radius.
    #[arg(long, default_value_t = 0.01)]
    r_min: f64,
    /// Largest radius.
    #[arg(long, default_value_t = 100.0)]
    r_max: f64,
    /// Number of radial points.
    #[arg(long, default_value_t = 64)]
    n_points: usize,
    #[arg(long, value_enum, default_value_t = GridKind::Log)]
    grid: GridKind,
}

impl GridArgs {
    fn points(&self) -> Result<Vec<f64>, CliError> {
        radial_grid(self.r_min, self.r_max, self.n_points, self.grid)
    }

    fn record(&self, table: &mut Table) {
        table.meta("r_min", self.r_min);
        table.meta("r_max", self.r_max);
        table.meta("n_points", self.n_points);
        table.meta("grid", self.grid.name());
    }
}

fn radial_grid(r_min: f64, r_max: f64, n: usize, kind: GridKind) -> Result<Vec<f64>, CliError> {
    if !(r_min.is_finite() && r_max.is_finite()) || !(r_min < r_max) {
        return Err(invalid(format!("need r_min < r_max, got r_min = {r_min}, r_max = {r_max}")));
    }
    if n < 2 {
        return Err(invalid(format!("n_points = {n} must be at least 2")));
    }
    match kind {
        GridKind::Log if !(r_min > 0.0) => Err(invalid(format!("log grid needs r_min > 0, got {r_min}"))),
        GridKind::Log => Ok(log_grid(r_min, r_max, n)),
        GridKind::Linear if !(r_min > 0.0) => Err(invalid(format!("radii must be positive, got r_min = {r_min}"))),
        GridKind::Linear => Ok(linear_grid(r_min, r_max, n)),
    }
}

fn check_theta(theta: f64) -> Result<(), CliError> {
    if !(0.0..=PI).contains(&theta) {
        return Err(invalid(format!("theta = {theta} must lie in [0, pi]")));
    }
    Ok(())
}

// qind

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Accel {
    Richardson,
    None,
}

#[derive(Debug, Clone, Args)]
pub struct QindArgs {
    /// Coulomb coupling a (start of the range when --a-max is given).
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    /// End of a linear range of couplings.
    #[arg(long)]
    a_max: Option<f64>,
    /// Points in the coupling range.
    #[arg(long, default_value_t = 11)]
    n_points: usize,
    /// Fractional Aharonov-Bohm flux alpha.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Hard cutoff of the partial-wave sum.
    #[arg(long, default_value_t = 2000)]
    l_max: usize,
    /// Required absolute tail bound.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Accel::Richardson)]
    accel: Accel,
    /// Also solve the Hartree fixed point a_eff = a - e0^2 Q_ind(a_eff) with this e0^2.
    #[arg(long)]
    e0sq: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn qind(args: &QindArgs) -> Result<Table, CliError> {
    let ctl = SeriesControl {
        l_max: args.l_max,
        tail_tol: args.tol,
        accel: match args.accel {
            Accel::Richardson => TailAccel::RichardsonTail,
            Accel::None => TailAccel::None,
        },
    };
    ctl.validate()?;
    let couplings = match args.a_max {
        Some(hi) => {
            if !(hi > args.a) || args.n_points < 2 {
                return Err(invalid("--a-max must exceed --a and --n-points must be at least 2"));
            }
            linear_grid(args.a, hi, args.n_points)
        }
        None => vec![args.a],
    };
    if let Some(e) = args.e0sq {
        if !(e > 0.0) {
            return Err(invalid(format!("e0sq = {e} must be positive")));
        }
    }
    let mut table = Table::new(vec![
        col("a", "Coulomb coupling (dimensionless)"),
        col("alpha", "fractional AB flux"),
        col("regime", "channel regime tag"),
        col("q1", "linear-response charge, units of e"),
        col("qr", "higher-order charge, units of e"),
        col("total", "induced charge q1 + qr, units of e"),
        col("tail_estimate", "absolute truncation error bound, units of e"),
        col("l_used", "largest partial wave summed"),
        col("a_eff", "Hartree effective coupling for --e0sq (empty when not requested)"),
    ]);
    header(&mut table, "qind");
    table.meta("alpha", args.alpha);
    table.meta("l_max", args.l_max);
    table.meta("tol", args.tol);
    table.meta("accel", format!("{:?}", args.accel).to_lowercase());
    if let Some(e) = args.e0sq {
        table.meta("e0sq", e);
    }
    table.meta("units", "charges in units of e = -e0 (e0 > 0)");
    let rows: Result<Vec<Vec<Cell>>, CliError> = couplings
        .par_iter()
        .map(|&a| {
            let q = q_ind(a, args.alpha, &ctl)?;
            let a_eff = match args.e0sq {
                Some(e) => Some(effective_coupling_subcritical(a, e, &ctl)?),
                None => None,
            };
            Ok(vec![
                a.into(),
                args.alpha.into(),
                "subcritical".into(),
                q.q1.into(),
                q.qr.into(),
                q.total.into(),
                q.tail_estimate.into(),
                q.l_used.into(),
                a_eff.into(),
            ])
        })
        .collect();
    table.rows = rows?;
    Ok(table)
}

// supercritical

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityForm {
    General,
    Window,
    SmallSigma,
}

#[derive(Debug, Clone, Args)]
pub struct SupercriticalArgs {
    /// Coulomb coupling a (> 1/2).
    #[arg(long)]
    a: f64,
    /// Self-adjoint extension angle in [0, pi].
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// Energy scale of the extension parameter; radii are in units of 1/E0.
    #[arg(long = "E0", alias = "e0", default_value_t = 1.0)]
    e0: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = DensityForm::General)]
    form: DensityForm,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn supercritical(args: &SupercriticalArgs) -> Result<Table, CliError> {
    check_theta(args.theta)?;
    let radii = args.grid.points()?;
    let sys = CoulombSystem::new(args.a, 0.0, 0.0, args.theta, args.e0)?;
    let s0 = sigma0(args.a)?;
    let probe = density_general(&sys, radii[0])?;
    let form = match args.form {
        DensityForm::General => "general",
        DensityForm::Window => "window",
        DensityForm::SmallSigma => "small-sigma",
    };
    let mut table = Table::new(vec![
        col("r", "radius, units of 1/E0"),
        col("r2_density_re", "r^2 times the real density, units of e"),
        col("density_re", "real part of the induced density, units of e per area"),
        col("density_im", "imaginary part (diagnostic), units of e per area"),
        col("regime", "supercritical formula used"),
        col("n_channels", "number of supercritical (l, s) channels"),
    ]);
    header(&mut table, "supercritical");
    table.meta("a", args.a);
    table.meta("theta", args.theta);
    table.meta("E0", args.e0);
    args.grid.record(&mut table);
    table.meta("form", form);
    table.meta("sigma0", s0);
    let sigma_min = probe.channels.iter().map(|c| c.sigma).fold(f64::INFINITY, f64::min);
    table.meta("log_period", PI / sigma_min);
    let labels: Vec<String> =
        probe.channels.iter().map(|c| format!("({} {} {:.6})", c.l, spin_label(c.s), c.sigma)).collect();
    table.meta("channels", labels.join(" "));
    table.meta("units", "densities in units of e per area, e = -e0; radii in units of 1/E0");
    let rows: Result<Vec<Vec<Cell>>, CliError> = radii
        .par_iter()
        .map(|&r| {
            let (re, im, n) = match args.form {
                DensityForm::General => split(density_general(&sys, r)?),
                DensityForm::Window => split(density_window(&sys, r)?),
                DensityForm::SmallSigma => (density_small_sigma(args.a, r)?, 0.0, probe.channels.len()),
            };
            Ok(vec![r.into(), (r * r * re).into(), re.into(), im.into(), form.into(), n.into()])
        })
        .collect();
    table.rows = rows?;
    Ok(table)
}

fn split(p: SupercriticalDensityPoint) -> (f64, f64, usize) {
    (p.density_re, p.density_im, p.channels.len())
}

// rgflow

#[derive(Debug, Clone, Args)]
pub struct RgflowArgs {
    /// Initial effective coupling g0 >= 1/2.
    #[arg(long)]
    g0: f64,
    /// Coupling constant e0^2.
    #[arg(long)]
    e0sq: f64,
    /// Starting radius.
    #[arg(long, default_value_t = 1.0)]
    r0: f64,
    /// Final radius.
    #[arg(long)]
    r_max: f64,
    #[arg(long, default_value_t = 61)]
    n_points: usize,
    #[arg(long, value_enum, default_value_t = GridKind::Log)]
    grid: GridKind,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn rgflow(args: &RgflowArgs) -> Result<Table, CliError> {
    let radii = radial_grid(args.r0, args.r_max, args.n_points, args.grid)?;
    let flow = rg_flow(args.g0, args.e0sq, args.r0, &radii)?;
    let mut table = Table::new(vec![
        col("r", "radius, units of r0's length unit"),
        col("log_r", "ln(r/r0)"),
        col("g", "effective coupling from the integrated flow"),
        col("g_closed_form", "separation-of-variables solution"),
        col("regime", "supercritical while g > 1/2, critical once g = 1/2"),
    ]);
    header(&mut table, "rgflow");
    table.meta("g0", args.g0);
    table.meta("e0sq", args.e0sq);
    table.meta("r0", args.r0);
    table.meta("r_max", args.r_max);
    table.meta("n_points", args.n_points);
    table.meta("grid", args.grid.name());
    table.meta("u0", rg_invariant(args.g0));
    table.meta("screening_radius_closed_form", screening_radius(args.g0, args.e0sq, args.r0));
    match flow.crossing_log_r {
        Some(t) => table.meta("screening_radius_flow", args.r0 * t.exp()),
        None => table.meta("screening_radius_flow", "not reached"),
    }
    table.meta("event_offset", RG_EVENT_OFFSET);
    for (st, &r) in flow.states.iter().zip(&radii) {
        let regime = if st.g > 0.5 { "supercritical" } else { "critical" };
        table.push(vec![
            r.into(),
            st.log_r.into(),
            st.g.into(),
            rg_closed_form(args.g0, args.e0sq, st.log_r).into(),
            regime.into(),
        ]);
    }
    Ok(table)
}

// massive

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Prefactor {
    Derived,
    Alternate,
}

#[derive(Debug, Clone, Args)]
pub struct MassiveArgs {
    /// Coulomb coupling a.
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    /// Fermion mass.
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    #[command(flatten)]
    grid: GridArgs,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Small-r slope constant (fitted from the exact integral when omitted).
    #[arg(long)]
    c_fit: Option<f64>,
    /// Prefactor of the large-mr asymptote.
    #[arg(long, value_enum, default_value_t = Prefactor::Derived)]
    prefactor: Prefactor,
    /// Critical coupling; with --epsilon0 adds the real vacuum polarization density.
    #[arg(long)]
    a_cr: Option<f64>,
    /// Depth of the dived level below -m.
    #[arg(long)]
    epsilon0: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn massive(args: &MassiveArgs) -> Result<Table, CliError> {
    if !(args.m > 0.0) {
        return Err(invalid(format!("m = {} must be positive", args.m)));
    }
    if !(args.tol > 0.0) {
        return Err(invalid(format!("tol = {} must be positive", args.tol)));
    }
    let radii = args.grid.points()?;
    let model = match (args.a_cr, args.epsilon0) {
        (Some(a_cr), Some(eps)) => Some(RealPolarizationModel::new(a_cr, args.m, eps)?),
        (None, None) => None,
        _ => return Err(invalid("--a-cr and --epsilon0 must be given together")),
    };
    let c_fit = match args.c_fit {
        Some(c) => c,
        None => fit_small_r_slope(args.tol.min(1e-10))?,
    };
    let prefactor = match args.prefactor {
        Prefactor::Derived => LargeRPrefactor::Derived,
        Prefactor::Alternate => LargeRPrefactor::Alternate,
    };
    let mut table = Table::new(vec![
        col("r", "radius, units of the inverse mass scale"),
        col("mr", "m r"),
        col("q_m", "induced charge inside r from adaptive quadrature, units of e0"),
        col("error_estimate", "absolute quadrature error bound, units of e0"),
        col("regime", "exact quadrature"),
        col("q_m_small", "small-mr asymptote -a(pi/4 - c_fit mr) for mr < 0.1"),
        col("q_m_large", "large-mr asymptote for mr >= 2"),
        col("real_density", "real vacuum polarization density, units of e0 m^2 (with --a-cr/--epsilon0)"),
        col("total_density", "q_m m^2 + real_density, order-of-magnitude estimate"),
    ]);
    header(&mut table, "massive");
    table.meta("a", args.a);
    table.meta("m", args.m);
    args.grid.record(&mut table);
    table.meta("tol", args.tol);
    table.meta("c_fit", c_fit);
    table.meta("c_fit_range", format!("mr in [{:e}, {:e}]", SLOPE_FIT_RANGE.0, SLOPE_FIT_RANGE.1));
    table.meta("prefactor", format!("{:?}", args.prefactor).to_lowercase());
    if let Some(md) = &model {
        table.meta("a_cr", md.a_cr);
        table.meta("epsilon0", md.epsilon0);
        table.meta("r_switch", md.r_switch);
        table.meta("match_constant", md.match_constant);
    }
    table.meta("units", "charges in units of e0; densities in units of e0 m^2");
    let rows: Result<Vec<Vec<Cell>>, CliError> = radii
        .par_iter()
        .map(|&r| {
            let mr = args.m * r;
            let p = q_m_coordinate(args.a, args.m, r, args.tol)?;
            let small = if mr < 0.1 { Some(q_m_small_r(args.a, args.m, r, c_fit)?) } else { None };
            let large = if mr >= LARGE_MR_MIN { Some(q_m_large_r_with(args.a, args.m, r, prefactor)?) } else { None };
            let real = match &model {
                Some(md) => Some(md.density(r)?),
                None => None,
            };
            let total = p.q_m * args.m * args.m + real.unwrap_or(0.0);
            Ok(vec![
                r.into(),
                mr.into(),
                p.q_m.into(),
                p.error_estimate.into(),
                "exact".into(),
                small.into(),
                large.into(),
                real.into(),
                total.into(),
            ])
        })
        .collect();
    table.rows = rows?;
    Ok(table)
}

// spectrum

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// Coulomb coupling a.
    #[arg(long)]
    a: f64,
    /// Fermion mass.
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Aharonov-Bohm flux mu.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    /// Largest radial quantum number.
    #[arg(long, default_value_t = 3)]
    k_max: u32,
    /// Largest orbital number.
    #[arg(long, default_value_t = 2)]
    l_max: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Table, CliError> {
    if !(args.m > 0.0) {
        return Err(invalid(format!("m = {} must be positive", args.m)));
    }
    let sys = CoulombSystem::new(args.a, args.mu, args.m, 0.0, 1.0)?;
    let mut table = Table::new(vec![
        col("k", "radial quantum number"),
        col("l", "orbital number"),
        col("s", "spin label"),
        col("nu", "|l + mu + 1/2|"),
        col("gamma", "sqrt(nu^2 - a^2)"),
        col("energy_re", "level energy, units of the mass scale"),
        col("binding", "m - E"),
        col("width", "level width"),
        col("kind", "bound or resonance"),
    ]);
    header(&mut table, "spectrum");
    table.meta("a", args.a);
    table.meta("m", args.m);
    table.meta("mu", args.mu);
    table.meta("k_max", args.k_max);
    table.meta("l_max", args.l_max);
    table.meta("degeneracy", "each level is shared by the (l, +1) and (-l, -1) channels");
    for l in 0..=args.l_max as i64 {
        let ch = make_channel(&sys, l, Spin::Up);
        for k in 0..=args.k_max {
            let lvl = bound_spectrum(&sys, k, l)?;
            table.push(vec![
                lvl.k.into(),
                lvl.l.into(),
                spin_label(lvl.s).into(),
                ch.nu.into(),
                ch.gamma().into(),
                lvl.energy_re.into(),
                binding_energy(&sys, k, l)?.into(),
                lvl.width.into(),
                kind_label(lvl.kind).into(),
            ]);
        }
    }
    Ok(table)
}

fn kind_label(k: SpectrumKind) -> &'static str {
    match k {
        SpectrumKind::Bound => "bound",
        SpectrumKind::Resonance => "resonance",
    }
}

// resonance

#[derive(Debug, Clone, Args)]
pub struct ResonanceArgs {
    /// Coulomb coupling a (> 1/2).
    #[arg(long)]
    a: f64,
    /// Fermion mass; 0 gives the massless ladder, > 0 the dived level.
    #[arg(long, default_value_t = 0.0)]
    m: f64,
    /// Self-adjoint extension angle in [0, pi].
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// Energy scale of the extension parameter.
    #[arg(long = "E0", alias = "e0", default_value_t = 1.0)]
    e0: f64,
    /// Levels k = 0..=k_max of the massless ladder.
    #[arg(long, default_value_t = 5)]
    k_max: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn resonance(args: &ResonanceArgs) -> Result<Table, CliError> {
    check_theta(args.theta)?;
    let sys = CoulombSystem::new(args.a, 0.0, args.m, args.theta, args.e0)?;
    let mut table = Table::new(vec![
        col("k", "level index"),
        col("l", "orbital number"),
        col("s", "spin label"),
        col("energy_re", "real part of the energy, units of E0 (massless) or m (massive)"),
        col("width", "level width, same units (estimate)"),
        col("kind", "resonance"),
        col("sigma", "sqrt(a^2 - nu^2) of the channel"),
        col("epsilon", "depth below -m of the dived level (massive only)"),
        col("residual", "equation residual at the root (massive only)"),
    ]);
    header(&mut table, "resonance");
    table.meta("a", args.a);
    table.meta("m", args.m);
    table.meta("theta", args.theta);
    table.meta("E0", args.e0);
    table.meta("width_note", "widths are order-of-magnitude estimates");
    if args.m == 0.0 {
        let ch = make_channel(&sys, 0, Spin::Up);
        let sigma = ch.sigma().ok_or_else(|| invalid(format!("a = {} is subcritical", args.a)))?;
        table.meta("tau", resonance_tau(args.a)?);
        table.meta("k_max", args.k_max);
        if sigma > SHARP_RESONANCE_SIGMA {
            table.meta("warning", format!("sigma = {sigma:.4} exceeds {SHARP_RESONANCE_SIGMA}; ladder formula assumes sigma << 1"));
        }
        for k in 0..=args.k_max as i64 {
            let lvl = resonance_spectrum_massless(&sys, k)?;
            table.push(vec![
                lvl.k.into(),
                lvl.l.into(),
                spin_label(lvl.s).into(),
                lvl.energy_re.into(),
                lvl.width.into(),
                kind_label(lvl.kind).into(),
                sigma.into(),
                Cell::Empty,
                Cell::Empty,
            ]);
        }
    } else {
        let d = solve_dived_resonance(&sys)?;
        table.meta("sigma0", d.sigma0);
        table.meta("branch", "largest-epsilon root on [1e-12 m, m]");
        table.push(vec![
            d.level.k.into(),
            d.level.l.into(),
            spin_label(d.level.s).into(),
            d.level.energy_re.into(),
            d.level.width.into(),
            kind_label(d.level.kind).into(),
            d.sigma0.into(),
            d.epsilon.into(),
            d.residual.into(),
        ]);
    }
    Ok(table)
}

// specfun-check

#[derive(Debug, Clone, Args)]
pub struct SpecfunCheckArgs {
    #[command(flatten)]
    pub out: OutputArgs,
}

const CHECK_TOL: f64 = 1e-12;

pub fn specfun_check() -> Result<Table, CliError> {
    let mut table = Table::new(vec![
        col("check", "identity evaluated"),
        col("value", "library value"),
        col("reference", "closed-form reference"),
        col("rel_err", "relative error"),
        col("tol", "tolerance"),
        col("pass", "true when rel_err <= tol"),
    ]);
    header(&mut table, "specfun-check");
    let mut add = |name: &str, value: f64, reference: f64| {
        let err = if reference == 0.0 { value.abs() } else { ((value - reference) / reference).abs() };
        table.push(vec![
            name.into(),
            value.into(),
            reference.into(),
            err.into(),
            CHECK_TOL.into(),
            if err <= CHECK_TOL { "true" } else { "false" }.into(),
        ]);
    };
    add("ln_gamma(1)", ln_gamma(c(1.0, 0.0))?.re, 0.0);
    add("ln_gamma(1/2)", ln_gamma(c(0.5, 0.0))?.re, 0.5 * PI.ln());
    add("digamma(1)", digamma(c(1.0, 0.0))?.re, -EULER_GAMMA);
    add("digamma(2)", digamma(c(2.0, 0.0))?.re, 1.0 - EULER_GAMMA);
    add("Im digamma(0.6i)", digamma(c(0.0, 0.6))?.im, 0.5 / 0.6 + 0.5 * PI / (0.6 * PI).tanh());
    add("trigamma(1)", trigamma(1.0)?, PI * PI / 6.0);
    add("trigamma(1/2)", trigamma(0.5)?, PI * PI / 2.0);
    add("trigamma(3/2)", trigamma(1.5)?, PI * PI / 2.0 - 4.0);
    let s = 0.3;
    let prod = (gamma(c(0.0, 2.0 * s))? * gamma(c(0.0, -2.0 * s))?).norm();
    add("|Gamma(0.6i)|^2", prod, PI / (2.0 * s * (2.0 * PI * s).sinh()));
    add("M_{0,1/2}(1)", whittaker_m(c(0.0, 0.0), c(0.5, 0.0), 1.0)?.re, 2.0 * 0.5f64.sinh());
    add("W_{0,1/2}(1)", whittaker_w(c(0.0, 0.0), c(0.5, 0.0), 1.0)?.re, (-0.5f64).exp());
    let (k, mu) = (c(0.3, 0.0), c(0.7, 0.0));
    let exact = (gamma(2.0 * mu + 1.0)? / gamma(mu - k + 0.5)?).re;
    for x in [0.5, 1.0, 5.0] {
        let (m, mp) = whittaker_m_with_derivative(k, mu, x)?;
        let (w, wp) = whittaker_w_with_derivative(k, mu, x)?;
        add(&format!("Wronskian W{{W,M}}(x={x})"), (w * mp - wp * m).re, exact);
    }
    add("I_0(0)", bessel_i(0.0, 0.0)?, 1.0);
    add("I_1(0)", bessel_i(1.0, 0.0)?, 0.0);
    add("I_{1/2}(2)", bessel_i(0.5, 2.0)?, (2.0 / (PI * 2.0)).sqrt() * 2.0f64.sinh());
    Ok(table)
}

pub fn specfun_verdict(table: &Table) -> Result<(), CliError> {
    let failed: Vec<String> = table
        .rows
        .iter()
        .filter(|row| row[5] != Cell::Text("true".into()))
        .map(|row| match &row[0] {
            Cell::Text(s) => s.clone(),
            _ => String::new(),
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("specfun-check: {} exceeded tolerance {CHECK_TOL:e}", failed.join(", "))))
    }
}
