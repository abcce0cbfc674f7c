//! Corpus ingestion, the verification sweep and report output.

pub mod corpus;
pub mod report;
pub mod sweep;

pub use corpus::{
    generate_all_graphs, generate_records_up_to, ingest_corpus, CorpusEntry, CorpusError,
    CorpusReader, MAX_GENERATED_ORDER,
};
pub use report::{emit_reports, format_witness, write_json_line, ReportFormat};
pub use sweep::{
    classify, sweep, sweep_collect, ClassificationReport, SweepOptions, SweepSummary, Theorem,
    Violation, WpMethod,
};
