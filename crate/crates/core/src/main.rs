fn main() {
    std::process::exit(tracediv::cli::main());
}
