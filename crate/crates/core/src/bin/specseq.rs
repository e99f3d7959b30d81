fn main() {
    std::process::exit(specseq::cli::main());
}
