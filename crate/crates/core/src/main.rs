use std::process::ExitCode;

fn main() -> ExitCode {
    hjfilter::cli::main_with_args(std::env::args_os())
}
