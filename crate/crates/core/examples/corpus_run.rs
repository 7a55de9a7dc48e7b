//! The embedded corpus checked against its expected values.
use logdiv::corpus::embedded;
use logdiv::report::{cmd_corpus, corpus_table, Options};

fn main() {
    let report = cmd_corpus(&embedded(), std::env::args().nth(1).as_deref(), &Options::default());
    print!("{}", corpus_table(&report));
    std::process::exit(report.exit_code);
}
