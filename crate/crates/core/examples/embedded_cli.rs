//! Driving the command-line interface in-process and inspecting its output.

fn main() {
    for args in [
        &["tailseries", "sequence", "--family", "primes", "--n", "4", "--format", "csv"][..],
        &["tailseries", "expand", "--x", "3/4", "--n", "6", "--format", "human"],
        &["tailseries", "report", "--dirac", "3/2", "--format", "human"],
        &["tailseries", "report", "--family", "logweighted", "--mode", "exact", "--dirac", "1"],
    ] {
        let out = tailseries::cli::run(args.iter().copied());
        println!("$ {}  (exit {})", args[1..].join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
        println!();
    }
}
