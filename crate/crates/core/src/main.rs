fn main() {
    std::process::exit(proofscope::cli::run(std::env::args_os()));
}
