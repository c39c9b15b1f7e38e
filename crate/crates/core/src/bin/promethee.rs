fn main() {
    std::process::exit(promethee::cli::run(std::env::args_os()));
}
