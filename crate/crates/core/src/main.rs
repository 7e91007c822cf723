fn main() {
    std::process::exit(kneser_trios::cli::parse_and_dispatch(std::env::args_os()));
}
