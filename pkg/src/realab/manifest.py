"""JSON corpus manifests that re-verify on reload."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .exact import IntMatrix
from .isogeny import Classification, rational_solution_space, verify_imaginary_isogeny
from .textio import LatticeDocument, emit, parse

VERSION = 1


class ManifestError(ValueError):
    """A stored decision failed re-verification, or the file is malformed."""


@dataclass
class CorpusManifest:
    documents: list[LatticeDocument]
    records: list[dict]
    partition: list[list[str]]
    seed: int | None = None
    budget: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def names(self) -> list[str]:
        return [doc.name for doc in self.documents]

    @classmethod
    def from_classification(
        cls, documents: list[LatticeDocument], result: Classification, seed=None, budget=None
    ) -> CorpusManifest:
        records = []
        for (i, j), dec in sorted(result.decisions.items()):
            rec = {"a": documents[i].name, "b": documents[j].name, "verdict": dec.verdict}
            if dec.witness is not None:
                rec["witness"] = dec.witness.U.tolist()
            if dec.certificate:
                rec["certificate"] = dec.certificate
            records.append(rec)
        partition = [[documents[i].name for i in cls_] for cls_ in result.classes]
        return cls(documents, records, partition, seed, budget)

    def to_json(self) -> str:
        payload = {
            "version": VERSION,
            "names": self.names,
            "seed": self.seed,
            "budget": self.budget,
            "documents": emit(self.documents),
            "records": self.records,
            "partition": self.partition,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def verify(self) -> None:
        """Raise :class:`ManifestError` unless every Yes and No record re-verifies."""
        by_name = {doc.name: doc.lattice for doc in self.documents}
        for rec in self.records:
            try:
                La, Lb = by_name[rec["a"]], by_name[rec["b"]]
            except KeyError as exc:
                raise ManifestError(f"record refers to unknown document {exc}") from None
            if rec["verdict"] == "yes":
                U = IntMatrix(rec.get("witness", []))
                if not verify_imaginary_isogeny(La, Lb, U):
                    raise ManifestError(f"witness for {rec['a']} ~ {rec['b']} does not verify")
            elif rec["verdict"] == "no":
                if rational_solution_space(La, Lb):
                    raise ManifestError(f"no-certificate for {rec['a']}, {rec['b']} does not verify")
            elif rec["verdict"] != "unknown":
                raise ManifestError(f"bad verdict {rec['verdict']!r}")
        covered = sorted(n for cls_ in self.partition for n in cls_)
        if covered != sorted(self.names):
            raise ManifestError("partition does not cover the documents exactly once")

    @classmethod
    def from_json(cls, text: str) -> CorpusManifest:
        try:
            payload = json.loads(text)
            if payload.get("version") != VERSION:
                raise ManifestError(f"unsupported manifest version {payload.get('version')!r}")
            docs = parse(payload["documents"])
            manifest = cls(docs, payload["records"], payload["partition"], payload["seed"], payload["budget"])
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ManifestError(f"malformed manifest: {exc}") from None
        if manifest.names != payload["names"]:
            raise ManifestError("document names do not match the manifest index")
        manifest.verify()
        return manifest
