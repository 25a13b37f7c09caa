import json

import pytest

from mdskit.dataset import (
    DatasetManifest,
    Instance,
    InstanceFormatError,
    generate_dataset,
    load_instance,
    load_manifest,
    save_instance,
    save_manifest,
    split_dataset,
)
from mdskit.exact import brute_force_gamma
from mdskit.graph import VertexSet, generate_er, is_dominating
from tests.conftest import cycle


def c6_instance() -> Instance:
    return Instance(
        graph=cycle(6),
        gamma=2,
        solutions=[VertexSet([0, 3]), VertexSet([1, 4]), VertexSet([2, 5])],
        provenance={"generator": "fixture"},
    )


class TestInstanceIo:
    def test_round_trip(self, tmp_path):
        f = tmp_path / "i.json"
        save_instance(c6_instance(), f)
        loaded = load_instance(f)
        assert loaded.graph == cycle(6)
        assert loaded.gamma == 2
        assert [s.members for s in loaded.solutions] == [[0, 3], [1, 4], [2, 5]]
        assert loaded.provenance == {"generator": "fixture"}

    def test_corrupt_gamma_rejected(self, tmp_path):
        f = tmp_path / "i.json"
        save_instance(c6_instance(), f)
        doc = json.loads(f.read_text())
        doc["gamma"] = 3
        f.write_text(json.dumps(doc))
        with pytest.raises(InstanceFormatError, match="size 2, gamma is 3"):
            load_instance(f)

    def test_non_dominating_solution_rejected(self, tmp_path):
        f = tmp_path / "i.json"
        doc = {"n": 6, "edges": [[i, (i + 1) % 6] for i in range(6)], "gamma": 2,
               "solutions": [[0, 1]], "provenance": {}}
        f.write_text(json.dumps(doc))
        with pytest.raises(InstanceFormatError, match="does not dominate"):
            load_instance(f)

    def test_missing_field_rejected(self, tmp_path):
        f = tmp_path / "i.json"
        f.write_text('{"n": 2, "edges": [[0, 1]], "gamma": 1}')
        with pytest.raises(InstanceFormatError, match="missing field 'solutions'"):
            load_instance(f)

    def test_unknown_field_warns_but_loads(self, tmp_path):
        f = tmp_path / "i.json"
        save_instance(c6_instance(), f)
        doc = json.loads(f.read_text())
        doc["notes"] = "extra"
        f.write_text(json.dumps(doc))
        with pytest.warns(UserWarning, match="unknown fields"):
            inst = load_instance(f)
        assert inst.gamma == 2

    def test_duplicate_solutions_rejected(self, tmp_path):
        f = tmp_path / "i.json"
        doc = {"n": 6, "edges": [[i, (i + 1) % 6] for i in range(6)], "gamma": 2,
               "solutions": [[0, 3], [3, 0]], "provenance": {}}
        f.write_text(json.dumps(doc))
        with pytest.raises(InstanceFormatError, match="duplicate"):
            load_instance(f)

    def test_parse_error_names_file(self, tmp_path):
        f = tmp_path / "broken.json"
        f.write_text("{not json")
        with pytest.raises(InstanceFormatError, match="broken.json"):
            load_instance(f)


class TestGenerateDataset:
    def test_labels_are_sound(self, tmp_path):
        manifest = generate_dataset(tmp_path, count=6, n_range=(8, 14), seed=1)
        assert len(manifest.instances) == 6
        for name in manifest.instances:
            inst = load_instance(tmp_path / name)
            assert inst.gamma == brute_force_gamma(inst.graph)
            for s in inst.solutions:
                assert is_dominating(inst.graph, s)

    def test_deterministic_across_job_counts(self, tmp_path):
        a = generate_dataset(tmp_path / "a", count=5, n_range=(8, 12), seed=3, jobs=1)
        b = generate_dataset(tmp_path / "b", count=5, n_range=(8, 12), seed=3, jobs=3)
        for name in a.instances:
            assert (tmp_path / "a" / name).read_text() == (tmp_path / "b" / name).read_text()
        assert a.summary == b.summary

    def test_manifest_written_with_summary(self, tmp_path):
        generate_dataset(tmp_path, count=4, n_range=(8, 10), seed=2)
        manifest = load_manifest(tmp_path / "manifest.json")
        assert manifest.summary["count"] == 4
        assert manifest.split is None

    def test_rejects_bad_n_range(self, tmp_path):
        with pytest.raises(ValueError, match="n_range"):
            generate_dataset(tmp_path, count=1, n_range=(10, 5), seed=0)

    def test_p_range_respected(self, tmp_path):
        manifest = generate_dataset(
            tmp_path, count=3, n_range=(10, 10), seed=4, p_range=(0.3, 0.3)
        )
        for name in manifest.instances:
            inst = load_instance(tmp_path / name)
            assert inst.provenance["p"] == 0.3


class TestSplit:
    def test_fraction_1122_of_1349(self):
        manifest = DatasetManifest(instances=[f"i{k:04d}.json" for k in range(1349)])
        out = split_dataset(manifest, 0.832, seed=0)
        assert len(out.split["train"]) == 1122
        assert len(out.split["test"]) == 227

    def test_partition_is_exact(self):
        manifest = DatasetManifest(instances=[f"i{k}.json" for k in range(50)])
        out = split_dataset(manifest, 0.8, seed=7)
        train, test = set(out.split["train"]), set(out.split["test"])
        assert train | test == set(manifest.instances)
        assert not train & test

    def test_deterministic_per_seed(self):
        manifest = DatasetManifest(instances=[f"i{k}.json" for k in range(40)])
        assert split_dataset(manifest, 0.75, seed=5).split == split_dataset(
            manifest, 0.75, seed=5
        ).split
        assert split_dataset(manifest, 0.75, seed=5).split != split_dataset(
            manifest, 0.75, seed=6
        ).split

    def test_rejects_bad_fraction(self):
        with pytest.raises(ValueError):
            split_dataset(DatasetManifest(instances=["a"]), 1.0, seed=0)

    def test_round_trips_through_manifest_file(self, tmp_path):
        manifest = split_dataset(
            DatasetManifest(instances=[f"i{k}.json" for k in range(10)]), 0.8, seed=1
        )
        f = tmp_path / "manifest.json"
        save_manifest(manifest, f)
        assert load_manifest(f).split == manifest.split


class TestValidate:
    def test_requires_solutions(self):
        inst = Instance(graph=cycle(6), gamma=2, solutions=[])
        with pytest.raises(InstanceFormatError, match="no solutions"):
            inst.validate()

    def test_random_instances_validate(self):
        from mdskit.exact import enumerate_optima

        for seed in range(5):
            g = generate_er(12, 0.25, seed=seed)
            sols = enumerate_optima(g, 4)
            Instance(graph=g, gamma=len(sols[0]), solutions=sols).validate()
