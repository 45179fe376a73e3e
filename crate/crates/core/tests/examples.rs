use filtra::examples::EXAMPLES;
use filtra::report::{render_human, run_example, RunFlags, TaskOutput};

#[test]
fn bundled_examples_reproduce_their_values() {
    for entry in &EXAMPLES {
        let out = run_example(entry, &RunFlags::default()).unwrap_or_else(|e| panic!("{}: {e}", entry.id));
        let Some(TaskOutput::Example { checks, .. }) = out.reports.last() else { panic!() };
        for c in checks {
            assert!(c.ok, "{}: {} ({})", entry.id, c.name, c.evidence);
        }
        println!("{}", render_human(&out));
    }
}
