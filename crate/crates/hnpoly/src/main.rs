use std::process::ExitCode;

fn main() -> ExitCode {
    hnpoly::cli::main()
}
