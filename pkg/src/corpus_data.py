"""
Bundled matrices of linear forms in four variables x0..x3.

`WESTWICK10` is a 10×10 table whose entries are 0 or ±x_i. `APPENDIX14` holds the four 14×14
integer coefficient matrices A0..A3 of x0*A0 + x1*A1 + x2*A2 + x3*A3 over GF(7), entries printed
as symmetric residues. Rows are whitespace separated; `polymat.corpus_load` parses and checks them.
"""

WESTWICK10 = """
  0    0    0    0    0    0    0   x0   x1    0
  0    0    0    0    0    0   x0   x1    0   x2
  0    0    0    0    0  -x0   x1    0   x2   x3
  0    0    0    0   x0   x1    0   x2   x3    0
  0    0    0  -x0    0    0   x2  -x3    0    0
  0    0   x0  -x1    0    0   x3    0    0    0
  0  -x0  -x1    0  -x2  -x3    0    0    0    0
-x0  -x1    0  -x2   x3    0    0    0    0    0
-x1    0  -x2  -x3    0    0    0    0    0    0
  0  -x2  -x3    0    0    0    0    0    0    0
"""

APPENDIX14_PRIME = 7

APPENDIX14_A0 = """
 0 -2 -1 -3  3  3  3  3  1 -3  1  1  1 -3
 2  0 -1 -2  3  0 -3 -2  0  3  0  0 -2  0
 1  1  0  3 -3  2 -3 -2 -3 -3 -2 -2 -3 -3
 3  2 -3  0  2 -3  1  0  2  1  3 -1  0  1
-3 -3  3 -2  0 -2 -3  3 -3 -2 -1  2  2  1
-3  0 -2  3  2  0  3 -3 -3  1  3 -1 -3  1
-3  3  3 -1  3 -3  0  1  3 -1  3 -2 -1 -2
-3  2  2  0 -3  3 -1  0  3  3  2 -3 -1  0
-1  0  3 -2  3  3 -3 -3  0 -1  3 -2 -3 -3
 3 -3  3 -1  2 -1  1 -3  1  0 -1 -2  2 -1
-1  0  2 -3  1 -3 -3 -2 -3  1  0  1 -3 -1
-1  0  2  1 -2  1  2  3  2  2 -1  0  3 -2
-1  2  3  0 -2  3  1  1  3 -2  3 -3  0  1
 3  0  3 -1 -1 -1  2  0  3  1  1  2 -1  0
"""

APPENDIX14_A1 = """
 0 -2 -2  3 -3  0 -2 -3  3 -1  2  0  2 -3
 2  0  3 -1  1  2 -3 -1 -2 -1 -1 -3  1  2
 2 -3  0 -2  1  1  1 -1  2 -3  0 -3  2 -3
-3  1  2  0  2 -1  1 -2 -1 -2  1  2  2 -3
 3 -1 -1 -2  0  1 -1  1 -2  0 -1  2  0  0
 0 -2 -1  1 -1  0  3  0 -2  2  2 -3 -3  1
 2  3 -1 -1  1 -3  0 -3  2  3 -1 -2 -2  3
 3  1  1  2 -1  0  3  0  1  1  3  0  3 -1
-3  2 -2  1  2  2 -2 -1  0  2 -1 -3  1  2
 1  1  3  2  0 -2 -3 -1 -2  0 -1  1  3 -1
-2  1  0 -1  1 -2  1 -3  1  1  0 -3  2 -3
 0  3  3 -2 -2  3  2  0  3 -1  3  0  3 -1
-2 -1 -2 -2  0  3  2 -3 -1 -3 -2 -3  0  0
 3 -2  3  3  0 -1 -3  1 -2  1  3  1  0  0
"""

APPENDIX14_A2 = """
 0  2  2 -3  3  2 -1 -1  1  1  0  2 -3 -2
-2  0 -2  3  3 -1  1 -1 -3 -2  1 -3 -2 -2
-2  2  0  1  3  1  3  2  2  3  2  1  0 -3
 3 -3 -1  0 -3 -1  1 -3  3 -1 -3  2 -3  1
-3 -3 -3  3  0  3 -2 -3  3  1 -3 -1  0  2
-2  1 -1  1 -3  0  3 -2  0 -2  0 -2 -2 -2
 1 -1 -3 -1  2 -3  0  0  2 -1 -2 -3  2 -2
 1  1 -2  3  3  2  0  0 -2  0  2 -2  0  3
-1  3 -2 -3 -3  0 -2  2  0 -1 -1 -1  0 -1
-1  2 -3  1 -1  2  1  0  1  0 -2  3 -2  3
 0 -1 -2  3  3  0  2 -2  1  2  0 -3  3 -1
-2  3 -1 -2  1  2  3  2  1 -3  3  0  0 -1
 3  2  0  3  0  2 -2  0  0  2 -3  0  0  3
 2  2  3 -1 -2  2  2 -3  1 -3  1  1 -3  0
"""

APPENDIX14_A3 = """
 0 -3  2 -3 -1 -1  3 -2  3  3  3  0 -3 -3
 3  0 -3  1  1  2 -1 -3 -1  0  3 -3  0 -1
-2  3  0  1 -1  0 -1 -2  3  0 -1 -2  1 -2
 3 -1 -1  0  3  2 -1  0  1 -3 -3 -1 -1  3
 1 -1  1 -3  0  3  3  0  0 -3 -3  3  2  3
 1 -2  0 -2 -3  0 -3  3  3 -3 -3 -2  1  1
-3  1  1  1 -3  3  0  0  3  2  0 -3  2  0
 2  3  2  0  0 -3  0  0  0  1 -1 -2  1  1
-3  1 -3 -1  0 -3 -3  0  0  3  2 -3 -1 -1
-3  0  0  3  3  3 -2 -1 -3  0 -2 -2 -3 -2
-3 -3  1  3  3  3  0  1 -2  2  0  1  2 -3
 0  3  2  1 -3  2  3  2  3  2 -1  0  2 -2
 3  0 -1  1 -2 -1 -2 -1  1  3 -2 -2  0 -3
 3  1  2 -3 -3 -1  0 -1  1  2  3  2  3  0
"""

APPENDIX14 = (APPENDIX14_A0, APPENDIX14_A1, APPENDIX14_A2, APPENDIX14_A3)
