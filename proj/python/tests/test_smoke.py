# Copyright 2026 The semiflat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import json

import pytest

import semiflat


def test_catalog_and_tables():
    s = semiflat.catalog("chain:4")
    assert len(s) == 4
    assert s.labels == ["0", "3", "1", "2"]
    a = s.element("1")
    assert s.plus(a, s.element("2")) == s.element("2")
    assert "zmod:6" in semiflat.catalog_examples()
    b = semiflat.from_tables("B", [[0, 1], [1, 1]], [[0, 0], [0, 1]])
    assert b.is_commutative()
    with pytest.raises(semiflat.AxiomViolation):
        semiflat.from_tables("bad", [[0, 1], [1, 1]], [[0, 1], [1, 1]])
    with pytest.raises(semiflat.UnknownReference):
        semiflat.catalog("nope:3")


def test_matrix_counterexample():
    r = semiflat.regularity("chain:4", matrix_scan={"n": 2, "matrices": [[["0", "1"], ["2", "3"]]]})
    assert r["status"] == "ok"
    assert r["data"]["vn_regular"] is True
    assert r["data"]["matrix_scan"]["searched"] == 256
    assert r["data"]["matrix_scan"]["witnesses"] == [None]


def test_z2_is_not_flat_over_z4():
    r = semiflat.flatness("quotient:right:2:zmod:4", "left:zmod:4")
    d = r["data"]
    assert (d["m_flat"], d["i_flat"], d["e_flat"]) == ("false", "false", "false")
    assert d["witnesses"]["m"]["members"] == ["0", "2"]
    s = semiflat.flatness("quotient:right:2:zmod:4", "S")
    assert s["data"]["criterion_agrees"] is True


def test_tensor_and_caps():
    t = semiflat.tensor("right:zmod:4", "quotient:left:2:zmod:4")
    assert t["data"]["size"] == 2 and t["data"]["certified"]
    over = semiflat.tensor("right:zmod:6", "left:zmod:6")
    assert over["status"] == "error" and over["data"]["error"] == "size_cap_exceeded"
    with pytest.raises(semiflat.BadCaps):
        semiflat.tensor("right:boolean", "left:boolean", tensor_cap=0)


def test_workspace_round_trip():
    text = json.dumps({"schema_version": 1,
                       "analyses": [{"kind": "regularity", "semiring": "chain:3"}, {"kind": "validate"}]})
    report = semiflat.run_workspace(text)
    assert report["schema_version"] == semiflat.SCHEMA_VERSION
    assert [e["status"] for e in report["entries"]] == ["ok", "ok"]
    assert semiflat.run_workspace(text, jobs=2) == report
    with pytest.raises(semiflat.ParseError):
        semiflat.run_workspace("{ not json")


def test_reproduce_single_row():
    rows = semiflat.reproduce(["matrix", "chain3"])
    assert [r["key"] for r in rows] == ["matrix", "chain3"]
    assert all(r["passed"] for r in rows)
    assert semiflat.row_keys()[0] == "matrix"
