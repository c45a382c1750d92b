fn main() {
    std::process::exit(proxcg::cli::run(std::env::args_os()));
}
