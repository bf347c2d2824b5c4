use widthlab::experiments::{
    envelope_report, lemma1_experiment, parse_jsonl, render_report, report_file_name, scaling_experiment, summarize,
    write_report, ExperimentConfig, ReportFormat,
};
use widthlab::gf2::min_submatrix_rank_exhaustive;
use widthlab::{sample_matrix, RngSeed};

#[test]
fn jsonl_round_trip_recomputes_summaries() {
    let rep = scaling_experiment(&ExperimentConfig::new("scaling", vec![6, 8], 4, 9)).unwrap();
    let text = render_report(&rep, ReportFormat::JsonLines).unwrap();
    let back = parse_jsonl(&text).unwrap();
    assert_eq!(back.trials, rep.trials);
    assert_eq!(back.config, rep.config);
    assert_eq!(summarize(&back.trials, &back.metrics), back.summary);
    assert_eq!(render_report(&back, ReportFormat::JsonLines).unwrap(), text);
}

#[test]
fn empty_report_has_only_header_and_summary() {
    let rep = envelope_report(&[]);
    let csv = render_report(&rep, ReportFormat::Csv).unwrap();
    assert_eq!(csv.lines().count(), 1);
    assert!(csv.starts_with("experiment,version,generator,master_seed,n,trial,seed,"));
    let jsonl = render_report(&rep, ReportFormat::JsonLines).unwrap();
    assert_eq!(jsonl.lines().count(), 1);
    assert!(parse_jsonl(&jsonl).unwrap().trials.is_empty());
}

#[test]
fn written_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::new("lemma1", vec![9], 5, 1);
    for format in [ReportFormat::Csv, ReportFormat::JsonLines] {
        let a = write_report(&lemma1_experiment(&cfg).unwrap(), format, &dir.path().join("a")).unwrap();
        let b = write_report(&lemma1_experiment(&cfg).unwrap(), format, &dir.path().join("b")).unwrap();
        assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    }
    let rep = lemma1_experiment(&cfg).unwrap();
    assert_eq!(report_file_name(&rep, ReportFormat::Csv), "lemma1-1.csv");
    let path = write_report(&rep, ReportFormat::JsonLines, dir.path()).unwrap();
    assert_eq!(path, dir.path().join("lemma1-1.jsonl"));
}

#[test]
fn write_errors_carry_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("deeper").join("r.csv");
    let err = write_report(&envelope_report(&[3]), ReportFormat::Csv, &bad).unwrap_err();
    assert!(err.to_string().contains("missing"), "{err}");
}

#[test]
fn golden_submatrix_minimum() {
    let m = sample_matrix(9, 9, RngSeed(42));
    let min = min_submatrix_rank_exhaustive(&m, 3, 6, u128::MAX).unwrap();
    assert_eq!(min.rank, GOLDEN_MU_SEED_42);
    assert_eq!(m.submatrix(&min.rowset, &min.colset).unwrap().rank(), min.rank);
}

const GOLDEN_MU_SEED_42: usize = 1;

#[test]
fn golden_lemma1_median() {
    let rep = lemma1_experiment(&ExperimentConfig::new("lemma1", vec![9], 50, 1)).unwrap();
    assert_eq!(rep.metric_summary("mu")[0].median, 1.0);
    assert!(rep.certified);
}
