//! Parsing, validating and re-emitting instance files.

use spantrace::cli::format::InstanceFile;
use spantrace::cli::resolve::Instance;

fn main() {
    let text = include_str!("../tests/fixtures/two_point.json");
    let file = InstanceFile::from_json(text).expect("fixture parses");
    println!("round trip is byte-identical: {}", file.to_json() == text);
    let inst = Instance::resolve(&file).expect("fixture validates");
    println!("sheaves {:?}, morphisms {:?}", inst.sheaves.keys().collect::<Vec<_>>(), inst.morphisms.keys().collect::<Vec<_>>());

    let broken = include_str!("../tests/fixtures/missing_stalk.json");
    match Instance::parse(broken) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
}
