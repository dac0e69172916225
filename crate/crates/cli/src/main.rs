fn main() {
    std::process::exit(xyzsov_cli::run());
}
