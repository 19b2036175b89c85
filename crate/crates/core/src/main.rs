fn main() {
    std::process::exit(mpl_coalgebra::cli::main());
}
