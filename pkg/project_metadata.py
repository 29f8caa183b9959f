NAME = "cartesianforests"

AUTHOR = "Wojciech Gryc"

VERSION = "0.1.0"

DESCRIPTION = "Cartesian Forest matching: order-isomorphic pattern search over sequences with ties."

LONG_DESCRIPTION = "Exact and one-difference approximate Cartesian Forest matching, linear representations, signatures and filters, plus the Schröder Tree bijections and counting that come with Cartesian Forests."
