//! Rendering of a full synthetic 12 x 5 report against frozen snapshots.

use lineclip::bench::{render_report, BenchCell, BenchMeta, BenchReport, BenchRow, ReportFormat};
use lineclip::clip::{AlgorithmId, OpMeans};
use lineclip::{ClipWindow, ScenarioId};

/// Deterministic synthetic cells: timings grow with the scenario number and
/// the algorithm position, MSF-1 is excluded on axis-parallel scenarios.
fn synthetic_report() -> BenchReport {
    let mut rows = Vec::new();
    for s in ScenarioId::ALL {
        let k = s.number() as f64;
        let t_lb = 40.0 + k;
        for (j, algo) in AlgorithmId::ALL.into_iter().enumerate() {
            let cell = (!(algo == AlgorithmId::Msf1 && s.is_axis_parallel())).then(|| {
                let ns = t_lb / (1.0 + 0.25 * j as f64);
                BenchCell {
                    ns_per_line: ns,
                    v: t_lb / ns,
                    ops: OpMeans {
                        divisions: if algo == AlgorithmId::Lb {
                            4.0
                        } else {
                            2.0 - 0.5 * (k % 3.0)
                        },
                        multiplications: 8.0 + j as f64,
                        sign_tests: 5.0 + k / 7.0,
                        intersections_computed: if algo == AlgorithmId::Lb { 4.0 } else { 2.0 },
                    },
                    checksum: 0x1000 + s.number(),
                    forced: false,
                }
            });
            rows.push(BenchRow { scenario: s, algorithm: algo, cell });
        }
    }
    BenchReport {
        scenarios: ScenarioId::ALL.to_vec(),
        algorithms: AlgorithmId::ALL.to_vec(),
        rows,
        n: 100_000,
        repetitions: 5,
        seed: 1,
        window: ClipWindow::new(-1.0, -1.0, 1.0, 1.0).unwrap(),
        meta: BenchMeta { timestamp_unix: 1_700_000_000, build: "release build".into() },
    }
}

/// Compares against `tests/golden/<name>`; set `LINECLIP_BLESS=1` to rewrite.
fn check_snapshot(name: &str, got: &str) {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    if std::env::var_os("LINECLIP_BLESS").is_some() {
        std::fs::write(&path, got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert_eq!(got, want, "snapshot {name} differs");
}

#[test]
fn markdown_snapshot() {
    check_snapshot("report.md", &render_report(&synthetic_report(), ReportFormat::Markdown));
}

#[test]
fn csv_snapshot() {
    check_snapshot("report.csv", &render_report(&synthetic_report(), ReportFormat::Csv));
}

#[test]
fn markdown_has_one_row_per_scenario() {
    let got = render_report(&synthetic_report(), ReportFormat::Markdown);
    let first_table: Vec<&str> = got.lines().take_while(|l| l.starts_with('|')).collect();
    assert_eq!(first_table.len(), 2 + 12);
    assert!(first_table[0].starts_with("| Case | v_LSA | v_MSF | v_MSF-1 | v_SF |"));
    assert_eq!(first_table.iter().filter(|l| l.contains("n/a")).count(), 5);
}
