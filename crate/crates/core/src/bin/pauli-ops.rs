fn main() {
    std::process::exit(pauli_ops::runner::main_with_args(std::env::args_os()));
}
