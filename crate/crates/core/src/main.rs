fn main() -> std::process::ExitCode {
    cubic_rm::cli::main()
}
