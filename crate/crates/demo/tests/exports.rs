use serde_json::Value;
use shortness_demo::{analyze_json, bound_json, dominate_json};

#[test]
fn analyze_petersen() {
    let v: Value = serde_json::from_str(&analyze_json("IheA@GUAo\n").unwrap()).unwrap();
    assert_eq!(v["structure"]["classification"], "snark");
    assert_eq!(v["circumference"]["length"], 9);
    assert_eq!(v["oddness"]["oddness"], 2);
}

#[test]
fn bound_on_k4() {
    let v: Value = serde_json::from_str(&bound_json("C~", 0, 1).unwrap()).unwrap();
    assert_eq!(v["per_block"], 2);
    assert_eq!(v["coefficient"], "1/1");
    assert!(bound_json("C~", 0, 0).is_err());
}

#[test]
fn dominate_mobius() {
    let v: Value = serde_json::from_str(&dominate_json("GhdHKc", 4).unwrap()).unwrap();
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn bad_input_is_an_error() {
    assert!(analyze_json("I~~").unwrap_err().contains("byte"));
}
