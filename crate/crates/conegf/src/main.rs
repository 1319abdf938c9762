fn main() {
    std::process::exit(conegf::cli::run(std::env::args().skip(1).collect()));
}
