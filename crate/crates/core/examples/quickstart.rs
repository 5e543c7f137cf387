use autoreal::beta::{greedy_beta_expansion, FieldElement, IntPoly, NumberField};
use autoreal::diophantine::{build_ladder, measure_bound, tmm_verify};
use autoreal::exact::rat;
use autoreal::{fixtures, to_morphic};

fn main() -> autoreal::Result<()> {
    let tm = fixtures::thue_morse();
    assert_eq!(tm.kernel_size()?, 2);
    assert_eq!(measure_bound(2, 2, 2)?, 20u32.into());

    let ladder = build_ladder(&to_morphic(&tm)?, 10, 6, &rat(1, 4))?;
    println!("thresholds: {:?}", ladder.thresholds);

    let r = tmm_verify(2, 3)?;
    println!("j = {}, lower ok = {}", r.j, r.lower_ok);

    let golden = NumberField::new(IntPoly::from_i64(&[-1, -1, 1]))?;
    let half = FieldElement::from_rational(&golden, rat(1, 2));
    println!("{:?}", greedy_beta_expansion(&half, 12)?.digits);
    Ok(())
}
