//! Running the command-line tool in-process: a JSON document in, a JSON
//! report and exit code out.

use omnilie::cli;

const PERTURBED: &str = include_str!("../fixtures/perturbed.json");

fn main() {
    let out = cli::run_with_stdin(["omnilie", "check-dirac", "-", "--pretty"], || Ok(PERTURBED.to_string()));
    print!("{}", out.stdout);
    println!("exit code {}", out.code);

    let out = cli::run_with_stdin(["omnilie", "check-dirac", "-"], || Ok("{\"patch\": {\"rank\": 1}}".to_string()));
    print!("{}", out.stderr);
    println!("exit code {}", out.code);
}
