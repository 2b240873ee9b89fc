use hultman_wasm::api;
use serde_json::Value;

fn json(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn classify_reports_geometry_and_conditions() {
    let v = json(api::classify("B", 3, "426153"));
    assert_eq!(v["signed_window"], serde_json::json!([-3, 2, -1]));
    assert_eq!(v["coessential"].as_array().unwrap().len(), 4);
    assert_eq!(v["report"]["c"], 18);
    assert_eq!(v["report"]["s"], 20);
    assert_eq!(v["report"]["conditions"]["distance"], false);
    assert_eq!(v["hull"]["lo"].as_array().unwrap().len(), 6);
    assert_eq!(v["rank_grid"].as_array().unwrap().len(), 6);
}

#[test]
fn classify_type_a() {
    let v = json(api::classify("A", 4, "3412"));
    assert_eq!(v["signed_window"], Value::Null);
    assert_eq!(v["report"]["conditions"]["chambers"], true);
    // the cached context is replaced when the group changes
    let v = json(api::classify("B", 2, "2143"));
    assert_eq!(v["report"]["rank"], 2);
}

#[test]
fn chambers_of_longest_element() {
    let v = json(api::chambers("B", 2, "4321"));
    assert_eq!(v["chambers"], 8);
    assert_eq!(v["characteristic_polynomial"], serde_json::json!([3, -4, 1]));
}

#[test]
fn containment() {
    let v = json(api::contains("B", "52863174", "A", "4231"));
    assert_eq!(v["contains"], true);
    assert_eq!(v["indices"], serde_json::json!([1, 2, 5, 6]));
    let v = json(api::contains("B", "52863174", "B", "4231"));
    assert_eq!(v["contains"], false);
}

#[test]
fn bad_input_is_an_error() {
    assert!(api::classify("B", 3, "4231").is_err());
    assert!(api::classify("Q", 3, "123").is_err());
    assert!(api::contains("B", "1243", "A", "21").is_err());
    assert!(api::chambers("A", 3, "1,1,2").is_err());
}
