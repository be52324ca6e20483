'''stand-alone command-line interface'''
