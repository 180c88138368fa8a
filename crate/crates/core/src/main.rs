fn main() -> std::process::ExitCode {
    localhom::cli::run(std::env::args_os())
}
