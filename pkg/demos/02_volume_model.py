"""The data-volume arithmetic behind the downlink-reduction argument.

Compares the bits needed to move a full-radiometry scene against a
compressed thematic mask and a handful of region-of-interest chips.
"""

from eochain.model import mask_volume, scene_volume

AREA_KM2 = 100.0

print(f"Scene of {AREA_KM2:.0f} km^2 at different resolutions (4 bands x 12 bit):")
for gsd in (3.0, 10.0, 20.0):
    bits = scene_volume(AREA_KM2, gsd, 4, 12)
    print(f"  gsd {gsd:4.0f} m -> {bits:>13,d} bits  ({bits / 8e6:8.1f} MB)")

raw = scene_volume(AREA_KM2, 3.0, 4, 12)
print("\nThematic mask of the same scene at 3 m:")
for compression in (1.0, 10.0):
    bits = mask_volume(AREA_KM2, 3.0, compression)
    print(f"  compression {compression:4.0f}x -> {bits:>13,d} bits  "
          f"(raw is {raw / bits:6.1f}x heavier)")

print("\nRegion-of-interest chips (full radiometry, 2x linear margin):")
for area_ha in (3.0, 10.0, 50.0):
    chip = scene_volume(area_ha * 0.01 * 4.0, 3.0, 4, 12)
    print(f"  {area_ha:5.1f} ha burn scar -> {chip:>11,d} bits ({chip / 8e3:7.1f} kB)")

mask = mask_volume(AREA_KM2, 3.0, 10.0)
print(f"\nHybrid downlink for one detection: mask + chip = "
      f"{mask + scene_volume(0.2, 3.0, 4, 12):,d} bits "
      f"vs full scene {raw:,d} bits "
      f"({raw / (mask + scene_volume(0.2, 3.0, 4, 12)):.0f}x reduction)")
