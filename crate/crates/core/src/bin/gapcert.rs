fn main() {
    std::process::exit(gapcert::cli::dispatch(std::env::args()));
}
