import pytest

from ttgeom.corpus import line_module
from ttgeom.modrep import elementary_abelian, find_isomorphism, random_module
from ttgeom.workspace import WorkspaceError, module_block, parse_workspace, parse_workspace_text


def diagnostics(text):
    with pytest.raises(WorkspaceError) as err:
        parse_workspace_text(text, "w.ttg")
    return [d.format("w.ttg") for d in err.value.diagnostics]


def test_minimal():
    ws = parse_workspace_text("[field] p=2\n[group] orders=2\n[module k] kind=trivial\n")
    assert ws.p == 2 and ws.group.orders == (2,) and ws.modules["k"].dim == 1


def test_noncommuting_pair_located():
    text = "[field] p=2\n[group] orders=2,2\n[module M] dim=2\n  g1 = 1 1; 0 1\n  g2 = 1 0; 1 1\n"
    (msg,) = diagnostics(text)
    assert msg.startswith("w.ttg:4:") and "g1*g2 != g2*g1" in msg


def test_undefined_ideal():
    text = "[field] p=2\n[group] orders=2,2\n[module k] kind=trivial\n[koszul K] of=k ideal=I\n"
    (msg,) = diagnostics(text)
    assert msg == "w.ttg:4:23: unknown ideal 'I'"


@pytest.mark.parametrize("text,needle", [
    ("[field] p=4\n", "not prime"),
    ("[field] p=2\n[group] orders=2\n[module k] kind=trivial\n[module k] kind=free\n", "already defined"),
    ("[field] p=2\n[group] orders=2,2\n[ideal I] gens = eta1 +\n", "w.ttg:3:"),
    ("[field] p=2\n[group] orders=2,2\n[subgroup H] basis=(1,0);(1,0)\n", "subgroup H"),
    ("[field] p=2\n[bogus] x=1\n", "bogus"),
])
def test_errors_carry_locations(text, needle):
    msgs = diagnostics(text)
    assert msgs and any(needle in m for m in msgs)
    assert all(m.count(":") >= 3 for m in msgs)


def test_fixture_files(datadir):
    ws = parse_workspace(datadir / "v22.ttg")
    assert set(ws.modules) == {"k", "F", "L", "S", "M"} and ws.koszul == {"K": ("k", "I")}
    z4 = parse_workspace(datadir / "z4.ttg")
    assert list(z4.maps) == ["res"] and z4.certify["Z4"][2] == 8


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (2, 3)])
def test_module_block_round_trip(p, r, rng):
    G = elementary_abelian(p, r)
    M = random_module(G, 5, rng)
    head = f"[field] p={p}\n[group] orders={','.join([str(p)] * r)}\n"
    ws = parse_workspace_text(head + module_block(M, "M"))
    assert ws.modules["M"].same_action(M)
    L = line_module(G, (1,) + (0,) * (r - 1))
    again = parse_workspace_text(head + module_block(L, "L")).modules["L"]
    assert find_isomorphism(again, L) is not None
