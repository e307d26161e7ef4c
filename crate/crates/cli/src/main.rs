fn main() {
    std::process::exit(kappa_sweep_cli::run(std::env::args_os()));
}
