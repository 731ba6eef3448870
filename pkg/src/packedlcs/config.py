"""Tunable knobs shared across modules."""

# Block-tabulation key budget in bits; blocks whose lookup key would exceed
# this are processed by direct scan.  Overridable via PACKED_LCS_TABLE_BITS.
TABLE_BITS_CAP = 22

# Lists at least this long take the vectorized bulk path in the wavelet
# machinery; shorter ones use the packed block recurrence.
BULK_THRESHOLD = 2048


def set_table_bits_cap(bits):
    global TABLE_BITS_CAP
    TABLE_BITS_CAP = int(bits)
