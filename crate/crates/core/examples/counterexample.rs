//! Bell circuit against the same circuit without its CNOT: the solver's
//! model names an input on which they differ.

use clifford_sat::analysis::all_basis_inputs;
use clifford_sat::circuit::bell_circuit;
use clifford_sat::equivalence::{
    build_miter, decode_counterexample, BatsatSolver, SatResult, SolverInterface,
};

fn main() {
    let bell = bell_circuit();
    let cut = bell.without_gate(1);
    let inputs = all_basis_inputs(2).unwrap();
    let miter = build_miter(&bell, &cut, &inputs).unwrap();
    let enc = miter.encoding();
    println!(
        "miter: {} vars, {} clauses, {:?}",
        enc.num_vars(),
        enc.num_clauses(),
        enc.counts()
    );

    let mut solver = BatsatSolver::new();
    solver.add_formula(enc.formula());
    assert_eq!(solver.solve().unwrap(), SatResult::Sat);
    let model = solver.model_vector(enc.num_vars()).unwrap();
    let cex = decode_counterexample(&model, &miter).unwrap();
    let show = |t: &clifford_sat::stabilizer::Tableau| {
        t.labels()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("input  {}: {}", cex.input_id, show(&cex.input_tableau));
    println!("bell   {}: {}", cex.output_id_a, show(&cex.output_a));
    println!("cut    {}: {}", cex.output_id_b, show(&cex.output_b));
    println!(
        "all distinguishing inputs: {:?}",
        miter.distinguishing_inputs()
    );
}
