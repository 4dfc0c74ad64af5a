fn main() -> std::process::ExitCode {
    grprop::cli::main_with_args(std::env::args())
}
