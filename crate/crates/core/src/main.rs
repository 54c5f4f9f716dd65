fn main() -> std::process::ExitCode {
    texseg::cli::main()
}
