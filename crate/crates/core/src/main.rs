fn main() {
    std::process::exit(soliton_crum::cli::run(std::env::args_os()));
}
