#![no_main]

use libfuzzer_sys::fuzz_target;
use neuroevo::harness::RunRecord;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(record) = RunRecord::parse_csv(text) {
        let again = RunRecord::parse_csv(&record.to_csv()).expect("written CSV parses");
        assert_eq!(again.rows.len(), record.rows.len());
    }
});
