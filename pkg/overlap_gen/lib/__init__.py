'''backend library interface'''
