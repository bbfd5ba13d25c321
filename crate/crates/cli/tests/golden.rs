mod common;

fn report(failures: Vec<String>) {
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn corpus_is_large_enough() {
    let valid = common::documents().iter().filter(|p| !common::is_error_doc(p)).count();
    assert!(valid >= 15, "{valid} valid documents");
}

#[test]
fn commands_match_expected_output() {
    report(common::check_commands());
}

#[test]
fn documents_round_trip() {
    report(common::check_round_trips());
}

#[test]
fn invalid_documents_are_rejected() {
    report(common::check_error_documents());
}
