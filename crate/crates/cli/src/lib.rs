//! Parameter sweeps over the Duffing frequency methods, rendered as
//! deterministic CSV for regression diffing and plotting.
//!
//! Three sweep modes mirror the standard comparison plots: squared
//! frequency against amplitude, period against coupling, and relative
//! period error against coupling. Every numeric cell is a direct library
//! output formatted to 12 significant digits; the CLI adds no arithmetic
//! of its own beyond the mode's defining quantity (`Omega^2` or
//! `T = 2 pi / Omega`).

use std::f64::consts::PI;
use std::fmt;

use lplde::{closed_forms, engine, oracle, ExpansionState, ModelSpec};

/// What gets swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Sweep the amplitude; tabulate squared frequencies.
    Amplitude,
    /// Sweep the coupling; tabulate periods.
    Mu,
    /// Sweep the coupling over a positive range; tabulate periods and
    /// their relative errors.
    Error,
}

/// An approximation column of the comparison table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Order-3 expansion at `lambda = 0`.
    Lp3,
    /// Stationary-lambda closed form (derived variant by default, printed
    /// variant behind [`SweepConfig::use_printed_pms`]).
    LpldePms,
    /// The printed stationary-lambda closed form, for comparison.
    LpldePrinted,
    /// The recursion engine at the configured order with its own
    /// numerically located stationary lambda.
    EngineN,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Lp3,
        Method::LpldePms,
        Method::LpldePrinted,
        Method::EngineN,
    ];

    /// CSV column name.
    pub fn column(&self) -> &'static str {
        match self {
            Method::Lp3 => "lp3",
            Method::LpldePms => "lplde_pms",
            Method::LpldePrinted => "lplde_printed",
            Method::EngineN => "engine_n",
        }
    }

    /// Parses a method token; `exact` is accepted and returns `None`
    /// since the exact oracle is always present as the baseline column.
    pub fn parse(token: &str) -> Result<Option<Method>, ConfigError> {
        match token.trim().to_ascii_lowercase().as_str() {
            "lp3" => Ok(Some(Method::Lp3)),
            "lplde_pms" => Ok(Some(Method::LpldePms)),
            "lplde_printed" => Ok(Some(Method::LpldePrinted)),
            "engine_n" => Ok(Some(Method::EngineN)),
            "exact" => Ok(None),
            other => Err(ConfigError::UnknownMethod(other.to_string())),
        }
    }
}

/// Parses a comma-separated method list, dropping duplicates and the
/// redundant `exact` token while preserving order.
pub fn parse_methods(tokens: &[String]) -> Result<Vec<Method>, ConfigError> {
    let mut out = Vec::new();
    for token in tokens {
        if let Some(method) = Method::parse(token)? {
            if !out.contains(&method) {
                out.push(method);
            }
        }
    }
    Ok(out)
}

/// A validated sweep request.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub mode: SweepMode,
    pub omega: f64,
    /// Fixed coupling (used when the amplitude is swept).
    pub mu: f64,
    /// Fixed amplitude (used when the coupling is swept).
    pub amplitude: f64,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub methods: Vec<Method>,
    pub engine_order: usize,
    pub use_printed_pms: bool,
}

impl SweepConfig {
    /// Standard comparison-plot defaults: `omega = 1`, `mu = 1`, `A = 1`,
    /// engine order 3.
    pub fn defaults(mode: SweepMode) -> Self {
        let (min, max) = match mode {
            SweepMode::Amplitude => (0.1, 10.0),
            SweepMode::Mu => (-0.99, 10.0),
            SweepMode::Error => (0.1, 10.0),
        };
        Self {
            mode,
            omega: 1.0,
            mu: 1.0,
            amplitude: 1.0,
            min,
            max,
            steps: 100,
            methods: vec![Method::Lp3, Method::LpldePms, Method::EngineN],
            engine_order: 3,
            use_printed_pms: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, value) in [
            ("omega", self.omega),
            ("mu", self.mu),
            ("amplitude", self.amplitude),
            ("min", self.min),
            ("max", self.max),
        ] {
            if !value.is_finite() {
                return Err(ConfigError::NonFinite(name));
            }
        }
        if self.omega <= 0.0 {
            return Err(ConfigError::NonPositive("omega"));
        }
        if self.steps < 2 {
            return Err(ConfigError::TooFewSteps(self.steps));
        }
        if self.min >= self.max {
            return Err(ConfigError::EmptyRange(self.min, self.max));
        }
        if self.methods.is_empty() {
            return Err(ConfigError::NoMethods);
        }
        if self.engine_order > lplde::MAX_ORDER {
            return Err(ConfigError::OrderTooLarge(self.engine_order));
        }
        match self.mode {
            SweepMode::Amplitude => {
                if self.min <= 0.0 {
                    return Err(ConfigError::NonPositive("min (swept amplitude)"));
                }
            }
            SweepMode::Error => {
                if self.min <= 0.0 {
                    return Err(ConfigError::NonPositive("min (error mode needs mu > 0)"));
                }
                if self.amplitude <= 0.0 {
                    return Err(ConfigError::NonPositive("amplitude"));
                }
            }
            SweepMode::Mu => {
                if self.amplitude <= 0.0 {
                    return Err(ConfigError::NonPositive("amplitude"));
                }
            }
        }
        Ok(())
    }
}

/// Config rejection reasons; the CLI maps these to exit code 1.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    NonFinite(&'static str),
    NonPositive(&'static str),
    TooFewSteps(usize),
    EmptyRange(f64, f64),
    NoMethods,
    OrderTooLarge(usize),
    UnknownMethod(String),
    WrongMode,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::NonFinite(name) => write!(f, "{name} must be finite"),
            ConfigError::NonPositive(name) => write!(f, "{name} must be positive"),
            ConfigError::TooFewSteps(n) => write!(f, "steps must be at least 2, got {n}"),
            ConfigError::EmptyRange(lo, hi) => write!(f, "min must be below max, got [{lo}, {hi}]"),
            ConfigError::NoMethods => write!(f, "at least one method must be selected"),
            ConfigError::OrderTooLarge(n) => {
                write!(f, "engine order {n} exceeds the maximum {}", lplde::MAX_ORDER)
            }
            ConfigError::UnknownMethod(token) => write!(
                f,
                "unknown method `{token}`; expected lp3, lplde_pms, lplde_printed, engine_n or exact"
            ),
            ConfigError::WrongMode => write!(f, "sweep function called with a mismatched mode"),
        }
    }
}

impl std::error::Error for ConfigError {}

/// One computed sweep row. Missing values come with an explanatory flag.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub exact: Option<f64>,
    pub values: Vec<Option<f64>>,
    pub errors: Vec<Option<f64>>,
    pub flags: Vec<&'static str>,
}

impl SweepRow {
    /// True when nothing could be computed for this parameter value.
    pub fn failed(&self) -> bool {
        self.exact.is_none() && self.values.iter().all(Option::is_none)
    }
}

pub const FLAG_UNBOUNDED: &str = "unbounded";
pub const FLAG_PMS_FALLBACK: &str = "pms_fallback_lambda0";
pub const FLAG_NONPHYSICAL: &str = "nonphysical_frequency";
pub const FLAG_ORACLE_ERROR: &str = "oracle_error";

/// Runs a validated sweep. Rows are produced in parameter order; failures
/// are recorded per row and never abort the sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>, ConfigError> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.steps);
    for i in 0..config.steps {
        let t = i as f64 / (config.steps - 1) as f64;
        let param = config.min + (config.max - config.min) * t;
        rows.push(compute_row(config, param));
    }
    Ok(rows)
}

/// Amplitude-mode sweep (squared frequency per method).
pub fn sweep_amplitude(config: &SweepConfig) -> Result<Vec<SweepRow>, ConfigError> {
    expect_mode(config, SweepMode::Amplitude)?;
    run_sweep(config)
}

/// Coupling-mode sweep (period per method).
pub fn sweep_mu(config: &SweepConfig) -> Result<Vec<SweepRow>, ConfigError> {
    expect_mode(config, SweepMode::Mu)?;
    run_sweep(config)
}

/// Positive-coupling sweep reporting the relative period errors.
pub fn sweep_error(config: &SweepConfig) -> Result<Vec<SweepRow>, ConfigError> {
    expect_mode(config, SweepMode::Error)?;
    run_sweep(config)
}

fn expect_mode(config: &SweepConfig, mode: SweepMode) -> Result<(), ConfigError> {
    if config.mode == mode {
        Ok(())
    } else {
        Err(ConfigError::WrongMode)
    }
}

fn compute_row(config: &SweepConfig, param: f64) -> SweepRow {
    let (mu, amplitude) = match config.mode {
        SweepMode::Amplitude => (config.mu, param),
        SweepMode::Mu | SweepMode::Error => (param, config.amplitude),
    };
    let mut flags = Vec::new();
    let blank = || SweepRow {
        param,
        exact: None,
        values: vec![None; config.methods.len()],
        errors: vec![None; config.methods.len()],
        flags: Vec::new(),
    };

    let spec = match ModelSpec::new(config.omega, mu, amplitude, 0.0, 3) {
        Ok(s) => s,
        Err(_) => {
            let mut row = blank();
            row.flags.push(FLAG_ORACLE_ERROR);
            return row;
        }
    };

    if spec.bounded_indicator() <= 0.0 {
        // No bounded oscillation here: mark the row and skip everything.
        let mut row = blank();
        row.flags.push(FLAG_UNBOUNDED);
        return row;
    }

    let exact = match oracle::omega_exact(&spec) {
        Ok(w) => Some(quantity(config.mode, w * w)),
        Err(_) => {
            push_flag(&mut flags, FLAG_ORACLE_ERROR);
            None
        }
    };

    let mut values = Vec::with_capacity(config.methods.len());
    let mut errors = Vec::with_capacity(config.methods.len());
    for &method in &config.methods {
        let value = method_omega2(config, method, &spec, &mut flags).and_then(|w2| {
            if matches!(config.mode, SweepMode::Amplitude) {
                Some(w2)
            } else if w2 > 0.0 {
                Some(2.0 * PI / w2.sqrt())
            } else {
                push_flag(&mut flags, FLAG_NONPHYSICAL);
                None
            }
        });
        let error = match (value, exact) {
            (Some(v), Some(e)) if e != 0.0 => Some(((v - e) / e).abs()),
            _ => None,
        };
        values.push(value);
        errors.push(error);
    }

    SweepRow {
        param,
        exact,
        values,
        errors,
        flags,
    }
}

fn quantity(mode: SweepMode, omega_squared: f64) -> f64 {
    match mode {
        SweepMode::Amplitude => omega_squared,
        SweepMode::Mu | SweepMode::Error => 2.0 * PI / omega_squared.sqrt(),
    }
}

fn push_flag(flags: &mut Vec<&'static str>, flag: &'static str) {
    if !flags.contains(&flag) {
        flags.push(flag);
    }
}

/// Squared frequency of one method at one parameter point, with fallback
/// flags recorded. `spec` carries the point's parameters at `lambda = 0`;
/// each method picks its own interpolation frequency.
pub fn method_omega2(
    config: &SweepConfig,
    method: Method,
    spec: &ModelSpec,
    flags: &mut Vec<&'static str>,
) -> Option<f64> {
    match method {
        Method::Lp3 => Some(closed_forms::omega2_order3(spec).omega_squared),
        Method::LpldePms => {
            if spec.mu() < 0.0 {
                push_flag(flags, FLAG_PMS_FALLBACK);
                Some(closed_forms::omega2_order3(spec).omega_squared)
            } else if config.use_printed_pms {
                Some(closed_forms::omega2_pms_printed(spec).ok()?.omega_squared)
            } else {
                Some(closed_forms::omega2_pms_derived(spec).ok()?.omega_squared)
            }
        }
        Method::LpldePrinted => {
            if spec.mu() < 0.0 {
                push_flag(flags, FLAG_PMS_FALLBACK);
                Some(closed_forms::omega2_order3(spec).omega_squared)
            } else {
                Some(closed_forms::omega2_pms_printed(spec).ok()?.omega_squared)
            }
        }
        Method::EngineN => {
            let lambda = match method_lambda(config, method, spec) {
                Some(l) => l,
                None => {
                    push_flag(flags, FLAG_PMS_FALLBACK);
                    0.0
                }
            };
            let run_spec = ModelSpec::new(
                spec.omega(),
                spec.mu(),
                spec.amplitude(),
                lambda,
                config.engine_order,
            )
            .ok()?;
            Some(
                ExpansionState::run(run_spec)
                    .ok()?
                    .frequency_squared()
                    .omega_squared,
            )
        }
    }
}

/// The interpolation frequency a method evaluates at, when it has one.
pub fn method_lambda(config: &SweepConfig, method: Method, spec: &ModelSpec) -> Option<f64> {
    match method {
        Method::Lp3 => Some(0.0),
        Method::LpldePms | Method::LpldePrinted => closed_forms::pms_lambda(spec).ok(),
        Method::EngineN => {
            if spec.mu() == 0.0 {
                Some(0.0)
            } else {
                engine::pms_lambda_numeric(
                    spec.omega(),
                    spec.mu(),
                    spec.amplitude(),
                    config.engine_order,
                )
                .ok()
            }
        }
    }
}

/// Formats a value to 12 significant digits, the CSV contract.
pub fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

/// Renders rows into the `param,exact,<method>...,err_<method>...,flags`
/// schema. Identical configs produce byte-identical output.
pub fn render_csv(config: &SweepConfig, rows: &[SweepRow]) -> String {
    let mut out = String::from("param,exact");
    for m in &config.methods {
        out.push(',');
        out.push_str(m.column());
    }
    for m in &config.methods {
        out.push_str(",err_");
        out.push_str(m.column());
    }
    out.push_str(",flags\n");
    for row in rows {
        out.push_str(&format_value(row.param));
        out.push(',');
        out.push_str(&row.exact.map(format_value).unwrap_or_default());
        for v in &row.values {
            out.push(',');
            out.push_str(&v.map(format_value).unwrap_or_default());
        }
        for e in &row.errors {
            out.push(',');
            out.push_str(&e.map(format_value).unwrap_or_default());
        }
        out.push(',');
        out.push_str(&row.flags.join(";"));
        out.push('\n');
    }
    out
}

/// Single-point comparison of every method against the exact oracle,
/// rendered as an aligned text table.
pub fn show_report(
    omega: f64,
    mu: f64,
    amplitude: f64,
    order: usize,
    use_printed_pms: bool,
) -> Result<String, ConfigError> {
    for (name, value) in [("omega", omega), ("mu", mu), ("amplitude", amplitude)] {
        if !value.is_finite() {
            return Err(ConfigError::NonFinite(name));
        }
    }
    if omega <= 0.0 {
        return Err(ConfigError::NonPositive("omega"));
    }
    if amplitude <= 0.0 {
        return Err(ConfigError::NonPositive("amplitude"));
    }
    if order > lplde::MAX_ORDER {
        return Err(ConfigError::OrderTooLarge(order));
    }

    let config = SweepConfig {
        engine_order: order,
        use_printed_pms,
        ..SweepConfig::defaults(SweepMode::Mu)
    };
    let spec = ModelSpec::new(omega, mu, amplitude, 0.0, 3)
        .map_err(|_| ConfigError::NonPositive("amplitude"))?;

    let mut out = format!(
        "point: omega = {omega}, mu = {mu}, amplitude = {amplitude}, engine order = {order}\n"
    );
    if spec.bounded_indicator() <= 0.0 {
        out.push_str("motion is unbounded (omega^2 + mu A^2 <= 0); nothing to compare\n");
        return Ok(out);
    }

    let exact_w2 = oracle::omega_exact(&spec).ok().map(|w| w * w);
    out.push_str(&format!(
        "{:<16}{:>20}{:>20}{:>20}{:>20}\n",
        "method", "omega^2", "period", "rel_err_period", "lambda"
    ));
    if let Some(w2) = exact_w2 {
        out.push_str(&report_line("exact", w2, exact_w2, None));
    }

    let mut flags = Vec::new();
    for method in Method::ALL {
        match method_omega2(&config, method, &spec, &mut flags) {
            Some(w2) => {
                let lambda = method_lambda(&config, method, &spec);
                out.push_str(&report_line(method.column(), w2, exact_w2, lambda));
            }
            None => out.push_str(&format!("{:<16}unavailable\n", method.column())),
        }
    }
    if !flags.is_empty() {
        out.push_str(&format!("flags: {}\n", flags.join(";")));
    }
    Ok(out)
}

fn report_line(name: &str, omega2: f64, exact_w2: Option<f64>, lambda: Option<f64>) -> String {
    let period = if omega2 > 0.0 {
        format_value(2.0 * PI / omega2.sqrt())
    } else {
        String::from("-")
    };
    let rel = match exact_w2 {
        Some(e) if omega2 > 0.0 && e > 0.0 => {
            let exact_period = 2.0 * PI / e.sqrt();
            let method_period = 2.0 * PI / omega2.sqrt();
            format_value(((method_period - exact_period) / exact_period).abs())
        }
        _ => String::from("-"),
    };
    let lambda = lambda
        .map(format_value)
        .unwrap_or_else(|| String::from("-"));
    format!(
        "{:<16}{:>20}{:>20}{:>20}{:>20}\n",
        name,
        format_value(omega2),
        period,
        rel,
        lambda
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_tokens_round_trip() {
        for m in Method::ALL {
            assert_eq!(Method::parse(m.column()).unwrap(), Some(m));
        }
        assert_eq!(Method::parse("exact").unwrap(), None);
        assert_eq!(Method::parse(" LP3 ").unwrap(), Some(Method::Lp3));
        assert!(Method::parse("nope").is_err());
    }

    #[test]
    fn parse_methods_dedups_and_drops_exact() {
        let tokens: Vec<String> = ["lp3", "exact", "lp3", "engine_n"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let methods = parse_methods(&tokens).unwrap();
        assert_eq!(methods, vec![Method::Lp3, Method::EngineN]);
    }

    #[test]
    fn config_validation_rejects_bad_ranges() {
        let mut c = SweepConfig::defaults(SweepMode::Amplitude);
        c.steps = 1;
        assert!(matches!(c.validate(), Err(ConfigError::TooFewSteps(1))));

        let mut c = SweepConfig::defaults(SweepMode::Amplitude);
        c.min = 2.0;
        c.max = 1.0;
        assert!(matches!(c.validate(), Err(ConfigError::EmptyRange(..))));

        let mut c = SweepConfig::defaults(SweepMode::Error);
        c.min = -1.0;
        assert!(matches!(c.validate(), Err(ConfigError::NonPositive(_))));

        let mut c = SweepConfig::defaults(SweepMode::Mu);
        c.methods.clear();
        assert!(matches!(c.validate(), Err(ConfigError::NoMethods)));
    }

    #[test]
    fn format_is_twelve_significant_digits() {
        assert_eq!(format_value(1.744140625), "1.74414062500e0");
        assert_eq!(format_value(0.0008660254037844386), "8.66025403784e-4");
    }

    #[test]
    fn wrong_mode_is_rejected() {
        let c = SweepConfig::defaults(SweepMode::Mu);
        assert!(matches!(sweep_amplitude(&c), Err(ConfigError::WrongMode)));
        assert!(matches!(sweep_error(&c), Err(ConfigError::WrongMode)));
        assert!(sweep_mu(&c).is_ok());
    }
}
