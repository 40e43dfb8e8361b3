//! Named experiment presets. Each id expands to one or more panels that
//! share a seed and realization count and land in one CSV file.

use super::config::{grid, ExperimentConfig, FixedAntenna, Mode, SweepAxis};
use crate::baselines::SchemeId;
use crate::error::{Error, Result};

pub const EXPERIMENT_IDS: [&str; 8] = [
    "fig4_convergence",
    "fig5_dpa",
    "fig6_single_sided",
    "fig7_rate_vs_snr",
    "fig8_antennas",
    "fig9_xpd",
    "fig10_xpi",
    "fig11_correlation",
];

const SCHEMES_NO_DPA: [SchemeId; 5] = [
    SchemeId::Polarforming,
    SchemeId::Spra,
    SchemeId::Paa,
    SchemeId::Cpa,
    SchemeId::Lpa,
];

pub fn describe(id: &str) -> Option<&'static str> {
    Some(match id {
        "fig4_convergence" => "mean rate per optimizer iteration at 5 dB",
        "fig5_dpa" => "polarforming vs dual-polarized antennas over SNR",
        "fig6_single_sided" => "schemes at one link end against a fixed LPA or CPA antenna",
        "fig7_rate_vs_snr" => "all schemes over SNR for small arrays",
        "fig8_antennas" => "rate vs M = N at 5 dB",
        "fig9_xpd" => "rate vs depolarization chi, 2x2",
        "fig10_xpi" => "rate vs cross-polarization coupling mu, 2x2",
        "fig11_correlation" => "rate vs correlation magnitude nu, 2x2",
        _ => return None,
    })
}

fn snr_grid() -> Vec<f64> {
    grid(-10.0, 20.0, 1.0)
}

fn label(id: &str, m: usize, n: usize) -> String {
    format!("{id}_m{m}n{n}")
}

/// Panels of a catalog experiment with default seed and realization count.
pub fn panels(id: &str) -> Result<Vec<ExperimentConfig>> {
    let unit = grid(0.0, 1.0, 0.1);
    let panels = match id {
        "fig4_convergence" => [(1, 2), (2, 1), (1, 4), (2, 2), (4, 4)]
            .into_iter()
            .map(|(m, n)| {
                ExperimentConfig::new(
                    label(id, m, n),
                    vec![SchemeId::Polarforming],
                    SweepAxis::Iteration,
                    vec![],
                )
                .antennas(m, n)
                .mode(Mode::Convergence)
            })
            .collect(),
        "fig5_dpa" => [1, 2, 4]
            .into_iter()
            .map(|k| {
                ExperimentConfig::new(
                    label(id, k, k),
                    vec![SchemeId::Polarforming, SchemeId::Dpa],
                    SweepAxis::SnrDb,
                    grid(-10.0, 30.0, 1.0),
                )
                .antennas(k, k)
            })
            .collect(),
        "fig6_single_sided" => {
            let mut v = Vec::new();
            for (tag, fixed) in [("lpa", FixedAntenna::Lpa), ("cpa", FixedAntenna::Cpa)] {
                v.push(
                    ExperimentConfig::new(
                        format!("{id}_tx_{tag}"),
                        SCHEMES_NO_DPA.to_vec(),
                        SweepAxis::SnrDb,
                        snr_grid(),
                    )
                    .antennas(1, 2)
                    .mode(Mode::TransmitSide { receiver: fixed }),
                );
                v.push(
                    ExperimentConfig::new(
                        format!("{id}_rx_{tag}"),
                        SCHEMES_NO_DPA.to_vec(),
                        SweepAxis::SnrDb,
                        snr_grid(),
                    )
                    .antennas(2, 1)
                    .mode(Mode::ReceiveSide { transmitter: fixed }),
                );
            }
            v
        }
        "fig7_rate_vs_snr" => [(1, 1), (1, 2), (2, 1), (2, 2)]
            .into_iter()
            .map(|(m, n)| {
                ExperimentConfig::new(label(id, m, n), SchemeId::ALL.to_vec(), SweepAxis::SnrDb, snr_grid())
                    .antennas(m, n)
            })
            .collect(),
        "fig8_antennas" => vec![ExperimentConfig::new(
            id,
            SCHEMES_NO_DPA.to_vec(),
            SweepAxis::NAntennas,
            grid(1.0, 8.0, 1.0),
        )],
        "fig9_xpd" => vec![ExperimentConfig::new(id, SCHEMES_NO_DPA.to_vec(), SweepAxis::Chi, unit)],
        "fig10_xpi" => vec![ExperimentConfig::new(id, SCHEMES_NO_DPA.to_vec(), SweepAxis::Mu, unit)],
        "fig11_correlation" => vec![ExperimentConfig::new(
            id,
            SCHEMES_NO_DPA.to_vec(),
            SweepAxis::NuMagnitude,
            unit,
        )],
        _ => {
            return Err(Error::config(
                "experiment_id",
                format!(
                    "unknown experiment `{id}`; expected one of {}",
                    EXPERIMENT_IDS.join(", ")
                ),
            ))
        }
    };
    Ok(panels)
}
