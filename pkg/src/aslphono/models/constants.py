"""
Constants and default values shared by the dataset models.

This module centralizes keypoint group layout, direction labels, attribute
names and serialization precision so every stage agrees on them.
"""

#
# Keypoint groups (upstream estimator defaults: BODY_25, face-70, hand-21)
#
BODY = "body"
FACE = "face"
LEFT_HAND = "left_hand"
RIGHT_HAND = "right_hand"

KEYPOINT_GROUPS: tuple[str, ...] = (BODY, FACE, LEFT_HAND, RIGHT_HAND)

GROUP_SIZES: dict[str, int] = {
    BODY: 25,
    FACE: 70,
    LEFT_HAND: 21,
    RIGHT_HAND: 21,
}

# Body joints used as the normalization reference
RIGHT_SHOULDER_INDEX = 2
LEFT_SHOULDER_INDEX = 5

# Hand joints: wrist, index base, middle base, little base
WRIST_INDEX = 0
INDEX_BASE_INDEX = 5
MIDDLE_BASE_INDEX = 9
LITTLE_BASE_INDEX = 17

# Lip landmarks on the 70-point face model
LABIALE_SUPERIUS_INDEX = 51
LABIALE_INFERIUS_INDEX = 57
CHEILION_RIGHT_INDEX = 54
CHEILION_LEFT_INDEX = 48

#
# Views
#
FRONTAL = "frontal"
SIDE = "side"
VIEWS: tuple[str, ...] = (FRONTAL, SIDE)

SIGNER_LEFT = "signer_left"
SIGNER_RIGHT = "signer_right"

#
# Direction labels, one pair per axis
#
RIGHT = "right"
LEFT = "left"
UP = "up"
DOWN = "down"
BODY_DIRECTION = "body"
FRONT = "front"

X_LABELS: tuple[str, str] = (RIGHT, LEFT)
Y_LABELS: tuple[str, str] = (UP, DOWN)
Z_LABELS: tuple[str, str] = (BODY_DIRECTION, FRONT)
DIRECTION_LABELS: tuple[str, ...] = X_LABELS + Y_LABELS + Z_LABELS

NONE_VALUE = "none"
DIRECTION_SEPARATOR = "_"

#
# Phonological attributes
#
DH_HANDSHAPE = "dh_handshape"
NDH_HANDSHAPE = "ndh_handshape"
DH_ORIENTATION = "dh_orientation"
NDH_ORIENTATION = "ndh_orientation"
DH_MOVEMENT = "dh_movement"
NDH_MOVEMENT = "ndh_movement"
MOUTH_OPENING = "mouth_opening"

CATEGORICAL_ATTRIBUTES: tuple[str, ...] = (
    DH_HANDSHAPE,
    NDH_HANDSHAPE,
    DH_ORIENTATION,
    NDH_ORIENTATION,
    DH_MOVEMENT,
    NDH_MOVEMENT,
)
MOVEMENT_ATTRIBUTES: tuple[str, ...] = (DH_MOVEMENT, NDH_MOVEMENT)
ATTRIBUTE_NAMES: tuple[str, ...] = CATEGORICAL_ATTRIBUTES + (MOUTH_OPENING,)

#
# Defaults
#
DEFAULT_SOURCE_FPS = 60
DEFAULT_TARGET_FPS = 3
DEFAULT_THRESHOLD_K = 0.30
DEFAULT_Z_SCALE = 1.0
DEFAULT_EPSILON_WIDTH = 1e-6
DEFAULT_CORRELATION_BINS = 5
DEGENERATE_TOLERANCE = 1e-9

# Decimal places used for every float written to a dataset document
FLOAT_PRECISION = 6

DEFAULT_DOMINANT_HAND = "right"
HANDSHAPE_SCORE = 1.0
