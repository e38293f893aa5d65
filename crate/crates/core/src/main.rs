fn main() {
    std::process::exit(premodular::cli::run(std::env::args_os()));
}
