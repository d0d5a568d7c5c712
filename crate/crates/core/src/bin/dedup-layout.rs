fn main() {
    std::process::exit(dedup_layout::cli::run(std::env::args_os()));
}
