fn main() {
    std::process::exit(hitchin_monodromy::cli::run(std::env::args_os()));
}
