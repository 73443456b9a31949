//! On-disk problem files and run reports, both JSON.

mod problem_file;
mod report;

pub use problem_file::{Basis, ProblemFile, ScheduleSpec, TermSpec, PROBLEM_SCHEMA};
pub use report::{
    h_table, phi_table, Check, ComponentAsymptotics, DiagnosticsSection, HEntry, KamSection, LinearizeSection, PhiEntry, ProblemSummary, RunReport,
    REPORT_SCHEMA,
};
