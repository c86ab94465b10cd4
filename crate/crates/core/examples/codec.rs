//! Machine codes, self-delimiting pairs and programs for the standard
//! universal interpreter.

use itm_complexity::codec::{decode_machine, encode_itm, encode_tm, Machine};
use itm_complexity::machines::{append_zero, const_zero, identity, never, writer};
use itm_complexity::universal::UniversalInterpreter;
use itm_complexity::Alphabet;

fn main() -> itm_complexity::Result<()> {
    let a = Alphabet::binary();
    for t in [identity(), const_zero(), append_zero(), never()] {
        let code = encode_tm(&t.clone().into())?;
        println!("{:>20}  code {code} (length {})", t.name, code.len());
    }
    let wcode = encode_itm(&writer().into())?;
    println!("{:>20}  code of length {}", "writer", wcode.len());
    assert!(matches!(decode_machine(&wcode)?, Machine::Itm(_)));

    let x = a.word("0110")?;
    let p = UniversalInterpreter::Standard.program_for(&identity().into(), &x)?;
    let (payload, code) = a.unpair(&p)?;
    println!("program for E on {x}: {p}");
    println!("  unpairs to payload {payload} and code {code}");
    println!("  runs to {:?}", UniversalInterpreter::Standard.apply(&p, 100).output());
    println!("11 decodes: {}", decode_machine(&a.word("11")?).is_ok());
    Ok(())
}
