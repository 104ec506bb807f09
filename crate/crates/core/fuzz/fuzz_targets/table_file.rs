#![no_main]
use libfuzzer_sys::fuzz_target;

use copspace::discrete::{StrategyTable, TableFile};

fuzz_target!(|data: &[u8]| {
    let Ok(file) = serde_json::from_slice::<TableFile>(data) else {
        return;
    };
    if let Ok(table) = StrategyTable::from_file(&file) {
        assert_eq!(table.to_file(), file);
        if let Some(cops) = table.cop_placement() {
            let _ = table.robber_placement(&cops);
        }
    }
});
