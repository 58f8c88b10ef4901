mod invariants_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/invariants.rs"));
}
mod spectrum_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spectrum.rs"));
}
mod polynomials_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/polynomials.rs"));
}
mod mellin_barnes_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mellin_barnes.rs"));
}
mod continuation_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/continuation.rs"));
}
mod residues_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/residues.rs"));
}
mod command_line_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

#[test]
fn invariants_example_runs() {
    invariants_example::run_example().expect("invariants example should run");
}

#[test]
fn spectrum_example_runs() {
    spectrum_example::run_example().expect("spectrum example should run");
}

#[test]
fn polynomials_example_runs() {
    polynomials_example::run_example().expect("polynomials example should run");
}

#[test]
fn mellin_barnes_example_runs() {
    mellin_barnes_example::run_example().expect("Mellin-Barnes example should run");
}

#[test]
fn continuation_example_runs() {
    continuation_example::run_example().expect("continuation example should run");
}

#[test]
fn residues_example_runs() {
    residues_example::run_example().expect("residues example should run");
}

#[test]
fn command_line_example_runs() {
    command_line_example::run_example().expect("command-line example should run");
}
