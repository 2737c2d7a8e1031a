use spinframe::correlation::{
    bell_original, expected_correlation, wigner_from_probabilities, wigner_inequality,
    CorrelationValue,
};
use spinframe::samplers::{
    enumerate_lhv_strategies, envelope_demo, estimate_correlation, estimate_lhv_triple,
    sweep_theta, Card, CorrelationEstimate, LhvStrategy, MeasurementSettings, RngStream,
};
use spinframe::su2::{decompose, spin_state, Direction, SpinSign};
use spinframe::verify::exact_checks;

use crate::args::BellModel;
use crate::report::{InequalityPair, Record};
use crate::CliError;

/// Results of one command plus whether it counts as a pass.
pub struct Outcome {
    pub records: Vec<Record>,
    pub passed: bool,
}

impl Outcome {
    fn ok(records: Vec<Record>) -> Outcome {
        Outcome {
            records,
            passed: true,
        }
    }
}

fn direction(alpha: f64) -> Result<Direction, CliError> {
    Ok(Direction::planar(alpha)?)
}

pub fn cmd_verify() -> Outcome {
    let checks = exact_checks();
    let passed = checks.iter().all(|c| c.passed);
    let records = checks
        .into_iter()
        .map(|c| Record::Check {
            name: c.name,
            passed: c.passed,
            detail: c.detail,
        })
        .collect();
    Outcome { records, passed }
}

pub fn cmd_correlate(theta: f64, n: u64, seed: u64) -> Result<Outcome, CliError> {
    let settings = MeasurementSettings::planar(theta)?;
    let est = estimate_correlation(&settings, n, &RngStream::new(seed, 0))?;
    let analytic = expected_correlation(settings.angle()).value();
    let z = est.z_score(analytic);
    Ok(Outcome::ok(vec![Record::Correlation {
        theta,
        analytic,
        mc_mean: est.mean,
        mc_std_error: est.std_error,
        z_score: z.is_finite().then_some(z),
        n,
        counts: est.counts,
    }]))
}

fn strategy_label(s: &LhvStrategy) -> String {
    s.assignment.iter().map(SpinSign::to_string).collect()
}

pub fn cmd_bell(
    angles: [f64; 3],
    n: u64,
    model: BellModel,
    seed: u64,
) -> Result<Outcome, CliError> {
    let dirs = [
        direction(angles[0])?,
        direction(angles[1])?,
        direction(angles[2])?,
    ];
    // Enumeration also validates that the three directions are distinct.
    let strategies = enumerate_lhv_strategies(&dirs)?;
    let records = match model {
        BellModel::LhvEnumerate => strategies
            .iter()
            .map(|row| Record::Inequality {
                model,
                strategy: Some(strategy_label(&row.strategy)),
                e_ab: row.e_ab.value(),
                e_ac: row.e_ac.value(),
                e_bc: row.e_bc.value(),
                std_errors: [0.0; 3],
                measured: InequalityPair {
                    bell: row.bell(),
                    wigner: row.wigner(),
                },
                analytic: None,
            })
            .collect(),
        BellModel::LhvVector => {
            let est = estimate_lhv_triple(&dirs, n, &RngStream::new(seed, 0))?;
            let (ab, ac, bc) = (est.e_ab(), est.e_ac(), est.e_bc());
            vec![Record::Inequality {
                model,
                strategy: None,
                e_ab: ab.value(),
                e_ac: ac.value(),
                e_bc: bc.value(),
                std_errors: [est.std_error(ab), est.std_error(ac), est.std_error(bc)],
                measured: InequalityPair {
                    bell: est.bell_report(),
                    wigner: est.wigner_report(),
                },
                analytic: None,
            }]
        }
        BellModel::Quantum => {
            let [a, b, c] = dirs;
            let run = |d1: Direction,
                       d2: Direction,
                       stream: u64|
             -> Result<CorrelationEstimate, CliError> {
                Ok(estimate_correlation(
                    &MeasurementSettings::new(d1, d2),
                    n,
                    &RngStream::new(seed, stream),
                )?)
            };
            let ab = run(a, b, 0)?;
            let ac = run(a, c, 1)?;
            let bc = run(b, c, 2)?;
            let cb = run(c, b, 3)?;
            let cv =
                |e: &CorrelationEstimate| CorrelationValue::new(e.mean).expect("empirical mean");
            let analytic_e = |x: &Direction, y: &Direction| expected_correlation(x.angle_to(y));
            vec![Record::Inequality {
                model,
                strategy: None,
                e_ab: ab.mean,
                e_ac: ac.mean,
                e_bc: bc.mean,
                std_errors: [ab.std_error, ac.std_error, bc.std_error],
                measured: InequalityPair {
                    bell: bell_original(cv(&ab), cv(&ac), cv(&bc)),
                    wigner: wigner_from_probabilities(
                        ab.p_plus_plus(),
                        ac.p_plus_plus(),
                        cb.p_plus_plus(),
                    ),
                },
                analytic: Some(InequalityPair {
                    bell: bell_original(analytic_e(&a, &b), analytic_e(&a, &c), analytic_e(&b, &c)),
                    wigner: wigner_inequality(a.angle_to(&b), a.angle_to(&c), c.angle_to(&b)),
                }),
            }]
        }
    };
    Ok(Outcome::ok(records))
}

pub fn sweep_grid(theta_min: f64, theta_max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    if !(theta_min.is_finite() && theta_max.is_finite()) || theta_min >= theta_max {
        return Err(CliError::Usage(
            "--theta-min must be below --theta-max".into(),
        ));
    }
    let span = theta_max - theta_min;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                theta_max
            } else {
                theta_min + span * i as f64 / (steps - 1) as f64
            }
        })
        .collect())
}

pub fn cmd_sweep(grid: &[f64], n: u64, seed: u64) -> Result<Outcome, CliError> {
    let rows = sweep_theta(grid, n, seed)?;
    Ok(Outcome::ok(rows.into_iter().map(Record::Sweep).collect()))
}

pub fn cmd_envelope(runs: u64, seed: u64) -> Result<Outcome, CliError> {
    if runs == 0 {
        return Err(CliError::Usage("--runs must be at least 1".into()));
    }
    let mut rng = RngStream::new(seed, 0);
    let mut records = Vec::with_capacity(runs as usize + 1);
    let (mut hearts, mut prior_sum, mut zero, mut one) = (0u64, 0.0, 0u64, 0u64);
    for run in 0..runs {
        let t = envelope_demo(&mut rng);
        hearts += u64::from(t.bob_card == Card::AceOfHearts);
        prior_sum += t.prior_prob;
        if t.posterior_prob == 0.0 {
            zero += 1;
        } else if t.posterior_prob == 1.0 {
            one += 1;
        }
        records.push(Record::Envelope {
            run,
            prior_prob: t.prior_prob,
            observed_card: t.observed_card,
            posterior_prob: t.posterior_prob,
            bob_card: t.bob_card,
        });
    }
    let freq = hearts as f64 / runs as f64;
    records.push(Record::EnvelopeSummary {
        runs,
        bob_hearts_frequency: freq,
        bob_hearts_std_error: (freq * (1.0 - freq) / runs as f64).sqrt(),
        mean_prior: prior_sum / runs as f64,
        posterior_zero: zero,
        posterior_one: one,
    });
    Ok(Outcome::ok(records))
}

pub fn cmd_rotate(alpha: f64, basis: f64) -> Result<Outcome, CliError> {
    let target = direction(alpha)?;
    let basis_dir = direction(basis)?;
    let state = spin_state(&target, SpinSign::Up);
    let (c_plus, c_minus) = decompose(&target, &basis_dir, SpinSign::Up);
    let parts = |c: spinframe::su2::ComplexAmplitude| [c.re, c.im];
    Ok(Outcome::ok(vec![Record::Rotate {
        alpha,
        basis,
        state: [parts(state.up()), parts(state.down())],
        c_plus: parts(c_plus),
        c_minus: parts(c_minus),
    }]))
}
