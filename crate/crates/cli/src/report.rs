use serde::{Deserialize, Serialize};

use spinframe::correlation::InequalityReport;
use spinframe::samplers::{Card, OutcomeCounts, SweepRow};

use crate::args::{BellModel, OutputFormat};

/// Echo of the inputs that determine a run's results.
///
/// Thread count is deliberately absent: it cannot change any result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    /// Angle arguments after unit conversion, in radians.
    pub angles: Vec<f64>,
    pub degrees: bool,
    pub n_trials: u64,
    pub master_seed: u64,
    pub output_format: OutputFormat,
    pub output_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub model: Option<BellModel>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runs: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub generator: String,
    pub results: Vec<Record>,
    pub duration_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityPair {
    pub bell: InequalityReport,
    pub wigner: InequalityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Check {
        name: String,
        passed: bool,
        detail: String,
    },
    Correlation {
        theta: f64,
        analytic: f64,
        mc_mean: f64,
        mc_std_error: f64,
        /// Absent when the standard error is zero and the mean is off target.
        z_score: Option<f64>,
        n: u64,
        counts: OutcomeCounts,
    },
    Inequality {
        model: BellModel,
        /// Particle-1 outcomes for a, b, c; only for enumerated strategies.
        strategy: Option<String>,
        e_ab: f64,
        e_ac: f64,
        e_bc: f64,
        /// Standard errors of the three correlations; zero for exact values.
        std_errors: [f64; 3],
        measured: InequalityPair,
        /// Closed-form singlet values at the same angles (quantum model only).
        analytic: Option<InequalityPair>,
    },
    Sweep(SweepRow),
    Envelope {
        run: u64,
        prior_prob: f64,
        observed_card: Card,
        posterior_prob: f64,
        bob_card: Card,
    },
    EnvelopeSummary {
        runs: u64,
        bob_hearts_frequency: f64,
        bob_hearts_std_error: f64,
        mean_prior: f64,
        posterior_zero: u64,
        posterior_one: u64,
    },
    Rotate {
        alpha: f64,
        basis: f64,
        state: [[f64; 2]; 2],
        c_plus: [f64; 2],
        c_minus: [f64; 2],
    },
}

/// `%g`-style formatting with six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..6).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

impl Record {
    pub fn csv_header(&self) -> Option<&'static [&'static str]> {
        Some(match self {
            Record::Check { .. } => &["check", "passed", "detail"],
            Record::Correlation { .. } => &[
                "theta_rad",
                "analytic",
                "mc_mean",
                "mc_stderr",
                "z_score",
                "n",
            ],
            Record::Inequality { .. } => &[
                "model",
                "strategy",
                "e_ab",
                "e_ac",
                "e_bc",
                "bell_lhs",
                "bell_rhs",
                "bell_margin",
                "bell_satisfied",
                "wigner_lhs",
                "wigner_rhs",
                "wigner_margin",
                "wigner_satisfied",
            ],
            Record::Sweep(_) => &[
                "theta_rad",
                "analytic",
                "mc_mean",
                "mc_stderr",
                "lhv_mean",
                "lhv_stderr",
                "n",
            ],
            Record::Envelope { .. } => &[
                "run",
                "prior_prob",
                "observed_card",
                "posterior_prob",
                "bob_card",
            ],
            Record::EnvelopeSummary { .. } => return None,
            Record::Rotate { .. } => &[
                "alpha_rad",
                "basis_rad",
                "up_re",
                "up_im",
                "down_re",
                "down_im",
                "c_plus_re",
                "c_plus_im",
                "c_minus_re",
                "c_minus_im",
            ],
        })
    }

    pub fn csv_row(&self) -> Option<Vec<String>> {
        Some(match self {
            Record::Check {
                name,
                passed,
                detail,
            } => {
                vec![name.clone(), flag(*passed).to_string(), detail.clone()]
            }
            Record::Correlation {
                theta,
                analytic,
                mc_mean,
                mc_std_error,
                z_score,
                n,
                ..
            } => vec![
                sig6(*theta),
                sig6(*analytic),
                sig6(*mc_mean),
                sig6(*mc_std_error),
                z_score.map(sig6).unwrap_or_default(),
                n.to_string(),
            ],
            Record::Inequality {
                model,
                strategy,
                e_ab,
                e_ac,
                e_bc,
                measured,
                ..
            } => {
                let (b, w) = (&measured.bell, &measured.wigner);
                vec![
                    model_name(*model).to_string(),
                    strategy.clone().unwrap_or_default(),
                    sig6(*e_ab),
                    sig6(*e_ac),
                    sig6(*e_bc),
                    sig6(b.lhs),
                    sig6(b.rhs),
                    sig6(b.margin),
                    flag(b.satisfied).to_string(),
                    sig6(w.lhs),
                    sig6(w.rhs),
                    sig6(w.margin),
                    flag(w.satisfied).to_string(),
                ]
            }
            Record::Sweep(r) => vec![
                sig6(r.theta),
                sig6(r.analytic),
                sig6(r.mc_mean),
                sig6(r.mc_std_error),
                sig6(r.lhv_mean),
                sig6(r.lhv_std_error),
                r.n.to_string(),
            ],
            Record::Envelope {
                run,
                prior_prob,
                observed_card,
                posterior_prob,
                bob_card,
            } => vec![
                run.to_string(),
                sig6(*prior_prob),
                observed_card.to_string(),
                sig6(*posterior_prob),
                bob_card.to_string(),
            ],
            Record::EnvelopeSummary { .. } => return None,
            Record::Rotate {
                alpha,
                basis,
                state,
                c_plus,
                c_minus,
            } => [*alpha, *basis]
                .into_iter()
                .chain(state.iter().flatten().copied())
                .chain(c_plus.iter().copied())
                .chain(c_minus.iter().copied())
                .map(sig6)
                .collect(),
        })
    }

    pub fn table_line(&self, color: bool) -> String {
        match self {
            Record::Check { name, passed, detail } => {
                let mark = match (passed, color) {
                    (true, true) => "\x1b[32mPASS\x1b[0m",
                    (false, true) => "\x1b[31mFAIL\x1b[0m",
                    (true, false) => "PASS",
                    (false, false) => "FAIL",
                };
                format!("[{mark}] {name:<52} {detail}")
            }
            Record::Correlation {
                theta,
                analytic,
                mc_mean,
                mc_std_error,
                z_score,
                n,
                ..
            } => format!(
                "theta = {} rad\n  analytic  E = {}\n  mc mean   E = {} ± {} (n = {n})\n  z-score     = {}",
                sig6(*theta),
                sig6(*analytic),
                sig6(*mc_mean),
                sig6(*mc_std_error),
                z_score.map(sig6).unwrap_or_else(|| "undefined".to_string()),
            ),
            Record::Inequality {
                model,
                strategy,
                e_ab,
                e_ac,
                e_bc,
                std_errors,
                measured,
                analytic,
            } => {
                let mut out = format!("model {}", model_name(*model));
                if let Some(s) = strategy {
                    out.push_str(&format!("  strategy {s}"));
                }
                out.push_str(&format!(
                    "\n  E_ab = {} ± {}  E_ac = {} ± {}  E_bc = {} ± {}",
                    sig6(*e_ab),
                    sig6(std_errors[0]),
                    sig6(*e_ac),
                    sig6(std_errors[1]),
                    sig6(*e_bc),
                    sig6(std_errors[2]),
                ));
                out.push_str(&inequality_lines("", measured));
                if let Some(a) = analytic {
                    out.push_str(&inequality_lines("analytic ", a));
                }
                out
            }
            Record::Sweep(r) => format!(
                "{:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>9}",
                sig6(r.theta),
                sig6(r.analytic),
                sig6(r.mc_mean),
                sig6(r.mc_std_error),
                sig6(r.lhv_mean),
                sig6(r.lhv_std_error),
                r.n
            ),
            Record::Envelope {
                run,
                prior_prob,
                observed_card,
                posterior_prob,
                ..
            } => format!(
                "run {run}: P(Bob has ace_of_hearts) = {} before; Alice opens {observed_card}; P = {} after",
                sig6(*prior_prob),
                sig6(*posterior_prob)
            ),
            Record::EnvelopeSummary {
                runs,
                bob_hearts_frequency,
                bob_hearts_std_error,
                mean_prior,
                posterior_zero,
                posterior_one,
            } => format!(
                "{runs} runs: Bob held ace_of_hearts in {} ± {} of runs (prior {}); posterior 0 in {posterior_zero}, 1 in {posterior_one}",
                sig6(*bob_hearts_frequency),
                sig6(*bob_hearts_std_error),
                sig6(*mean_prior)
            ),
            Record::Rotate {
                alpha,
                basis,
                state,
                c_plus,
                c_minus,
            } => format!(
                "|n({}),+> = ({}, {})\nin basis n({}): c+ = {}, c- = {}",
                sig6(*alpha),
                complex(state[0]),
                complex(state[1]),
                sig6(*basis),
                complex(*c_plus),
                complex(*c_minus)
            ),
        }
    }
}

fn complex([re, im]: [f64; 2]) -> String {
    if im == 0.0 {
        sig6(re)
    } else {
        format!(
            "{}{}{}i",
            sig6(re),
            if im < 0.0 { "-" } else { "+" },
            sig6(im.abs())
        )
    }
}

fn inequality_lines(prefix: &str, pair: &InequalityPair) -> String {
    let line = |name: &str, r: &InequalityReport| {
        format!(
            "\n  {prefix}{name:<7} lhs {} rhs {} margin {} -> {}",
            sig6(r.lhs),
            sig6(r.rhs),
            sig6(r.margin),
            if r.satisfied { "satisfied" } else { "VIOLATED" }
        )
    };
    line("bell", &pair.bell) + &line("wigner", &pair.wigner)
}

pub fn model_name(model: BellModel) -> &'static str {
    match model {
        BellModel::Quantum => "quantum",
        BellModel::LhvVector => "lhv-vector",
        BellModel::LhvEnumerate => "lhv-enumerate",
    }
}

impl RunReport {
    pub fn render(&self, format: OutputFormat, color: bool) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Table => self.render_table(color),
        }
    }

    fn render_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        if let Some(header) = self.results.iter().find_map(Record::csv_header) {
            writer.write_record(header).expect("in-memory write");
        }
        for row in self.results.iter().filter_map(Record::csv_row) {
            writer.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
    }

    fn render_table(&self, color: bool) -> String {
        let mut out = String::new();
        if matches!(self.results.first(), Some(Record::Sweep(_))) {
            out.push_str(&format!(
                "{:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>9}\n",
                "theta", "analytic", "mc_mean", "mc_stderr", "lhv_mean", "lhv_stderr", "n"
            ));
        }
        for record in &self.results {
            out.push_str(&record.table_line(color));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(-0.0), "0");
        assert_eq!(sig6(-1.0), "-1");
        assert_eq!(sig6(std::f64::consts::FRAC_1_SQRT_2), "0.707107");
        assert_eq!(sig6(-std::f64::consts::FRAC_1_SQRT_2), "-0.707107");
        assert_eq!(sig6(std::f64::consts::PI), "3.14159");
        assert_eq!(sig6(0.000999), "0.000999");
        assert_eq!(sig6(1234567.0), "1.23457e6");
        assert_eq!(sig6(-6.123233995736766e-17), "-6.12323e-17");
        assert_eq!(sig6(0.5), "0.5");
        assert_eq!(sig6(999999.7), "1e6");
    }

    #[test]
    fn json_round_trip() {
        let report = RunReport {
            config: RunConfig {
                subcommand: "rotate".into(),
                angles: vec![0.1, -std::f64::consts::FRAC_PI_2],
                degrees: false,
                n_trials: 10,
                master_seed: u64::MAX,
                output_format: OutputFormat::Json,
                output_path: None,
                model: Some(BellModel::LhvVector),
                steps: None,
                runs: None,
            },
            generator: "g".into(),
            results: vec![
                Record::Rotate {
                    alpha: 0.1,
                    basis: 0.2,
                    state: [[0.1f64.cos(), 0.0], [1.0 / 3.0, -0.0]],
                    c_plus: [std::f64::consts::FRAC_1_SQRT_2, 0.0],
                    c_minus: [-0.7071067811865475, 1e-300],
                },
                Record::Correlation {
                    theta: 0.0,
                    analytic: -1.0,
                    mc_mean: -1.0,
                    mc_std_error: 0.0,
                    z_score: None,
                    n: 3,
                    counts: OutcomeCounts {
                        plus_plus: 0,
                        plus_minus: 1,
                        minus_plus: 2,
                        minus_minus: 0,
                    },
                },
            ],
            duration_ms: 12.5,
        };
        let json = report.render(OutputFormat::Json, false);
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
