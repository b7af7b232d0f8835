fn main() {
    std::process::exit(dpinv::cli::run());
}
