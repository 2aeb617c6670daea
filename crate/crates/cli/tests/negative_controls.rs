use extkoszul_cli::report::Status;
use extkoszul_cli::verify::{run_criterion, CRITERIA};

#[test]
fn every_criterion_fails_on_corrupted_input() {
    for c in CRITERIA.iter() {
        let check = run_criterion(c, 3, true);
        assert_eq!(check.status, Status::Fail, "{}: {}", c.name, check.actual);
    }
}
