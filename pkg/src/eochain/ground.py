"""Ground segment: payload-data processing latency and marketplace delivery."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .model import (
    DataProduct,
    GroundLatencySpec,
    ProductKind,
    ServiceArchetype,
    Triggering,
    ValidationError,
)


@dataclass(frozen=True)
class MarketplaceRecord:
    product_id: str
    event_ids: frozenset[str]
    delivered: float


def pdgs_process(
    product: DataProduct,
    downlink_complete: float,
    latencies: GroundLatencySpec,
    archetype: ServiceArchetype,
) -> float:
    """Delivery time of a fully downlinked product.

    Raw scenes take the full processing latency; onboard masks and chips
    only need validation.  Periodic archetypes batch their output, so
    delivery additionally aligns to the next production-cycle boundary.
    """
    if product.kind is ProductKind.RAW_SCENE:
        t = downlink_complete + latencies.pdgs_raw_s
    else:
        t = downlink_complete + latencies.pdgs_mask_s
    if archetype.triggering is Triggering.PERIODIC:
        cycle = archetype.periodic_cycle_s or latencies.periodic_cycle_s
        if cycle is None or cycle <= 0:
            raise ValidationError("periodic archetype without a positive cycle")
        t = math.ceil(t / cycle) * cycle
    return t


class Marketplace:
    """Append-only delivery ledger; one record per product."""

    def __init__(self) -> None:
        self._records: list[MarketplaceRecord] = []
        self._seen: set[str] = set()

    def deliver(self, product: DataProduct, delivered: float) -> MarketplaceRecord:
        if not math.isfinite(delivered):
            raise ValidationError("delivery time must be finite")
        if product.id in self._seen:
            raise ValidationError(f"duplicate delivery for product {product.id}")
        self._seen.add(product.id)
        rec = MarketplaceRecord(product_id=product.id, event_ids=product.event_ids, delivered=delivered)
        self._records.append(rec)
        return rec

    def records(self) -> tuple[MarketplaceRecord, ...]:
        return tuple(sorted(self._records, key=lambda r: (r.delivered, r.product_id)))

    def __len__(self) -> int:
        return len(self._records)


def write_marketplace_dump(path: str | Path, records: Iterable[MarketplaceRecord]) -> None:
    """JSON-lines dump, one delivery per line."""
    with open(path, "w") as f:
        for r in records:
            f.write(
                json.dumps(
                    {
                        "product_id": r.product_id,
                        "event_ids": sorted(r.event_ids),
                        "delivered_s": round(r.delivered, 3),
                    },
                    sort_keys=True,
                )
                + "\n"
            )
