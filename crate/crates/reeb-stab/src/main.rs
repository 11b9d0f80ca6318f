use std::process::ExitCode;

fn main() -> ExitCode {
    reeb_stab::cli::run()
}
