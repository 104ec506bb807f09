#![no_main]
use libfuzzer_sys::fuzz_target;

use copspace::format::{parse_space, space_to_json};

fuzz_target!(|data: &str| {
    if let Ok(space) = parse_space(data) {
        let json = space_to_json(&space);
        let again = parse_space(&json).expect("written spaces reload");
        assert_eq!(space_to_json(&again), json);
    }
});
