fn main() {
    std::process::exit(wickcomb::cli::run(std::env::args_os()));
}
