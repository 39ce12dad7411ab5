"""Smoke test for the viracomb_py extension module."""

import viracomb_py as vc

RUNNING = "rsos p=4 pp=9 a=8 b=6 h=8,7,6,5,6,5,4,3,2,3,2,1,2,3,4,5,4,3,4,5,6,5,6"


def main():
    rr = [1, 1, 1, 1, 2, 2, 3, 3, 4]
    assert vc.bosonic_character(2, 5, 1, 2, 8) == rr
    assert vc.fermionic_character(4, 8) == rr
    assert vc.product_character(5, [1, 4], 8) == rr
    assert vc.closed_form("sum-2-5", 8) == rr

    try:
        vc.bosonic_character(2, 4, 1, 1, 5)
    except ValueError:
        pass
    else:
        raise AssertionError("non-coprime label accepted")

    paths = vc.rsos_paths(4, 9, 8, 6, 3)
    assert len(paths) == sum(vc.rsos_gf(4, 9, 8, 6, 3))
    assert vc.rsos_gf(4, 9, 8, 6, 3) == vc.bosonic_character(4, 9, 3, 8, 3)
    assert vc.half_gf(10, 4, 8, 2) == vc.bosonic_character(5, 11, 4, 4, 2)

    h = vc.RsosPath.parse(RUNNING)
    assert h.weight() == 74 and h.scoring_count() == 13
    img, trace = vc.bijection_forward(h)
    assert trace["lambda"] == [9, 8, 5, 1]
    assert img.weight() == h.weight()
    assert str(vc.bijection_inverse(img)) == RUNNING

    for p in vc.half_paths(8, 2, 2, 6):
        back = vc.bijection_inverse(p)
        assert vc.bijection_forward(back)[0] == p

    m = vc.minimal_path(10, [2, 1, 1, 1, 0, 1, 0])
    d = m.dissect()
    assert d["sector"]["n"] == [2, 1, 1, 1, 0, 1, 0]
    gf = vc.sector_gf(10, [2, 1, 1, 1, 0, 1, 0], m.weight() + 2)
    assert gf[m.weight()] == 1 and not any(gf[: m.weight()])
    for mv in m.moves():
        assert m.apply_move(mv["particle"]).weight() == m.weight() + 1

    assert "*" in h.ascii() and h.svg().startswith("<svg")
    reports = vc.run_verify("theorem2", order=12, max_t2=6)
    assert reports and all(r["status"] == "pass" for r in reports)
    print("smoke test ok")


if __name__ == "__main__":
    main()
