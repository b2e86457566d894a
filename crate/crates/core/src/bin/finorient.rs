fn main() -> std::process::ExitCode {
    finorient::cli::main()
}
