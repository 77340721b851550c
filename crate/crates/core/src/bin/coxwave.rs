use std::io::Write;

use clap::Parser;
use coxwave::cli::{run, Cli};

fn main() {
    let (code, text) = run(Cli::parse());
    if code == 2 {
        eprintln!("{text}");
    } else if !text.is_empty() {
        let _ = writeln!(std::io::stdout().lock(), "{}", text.trim_end());
    }
    std::process::exit(code);
}
