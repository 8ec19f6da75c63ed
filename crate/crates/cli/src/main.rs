fn main() {
    std::process::exit(qcoinv_cli::run(std::env::args_os()));
}
